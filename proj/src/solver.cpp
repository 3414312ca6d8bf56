#include "pfcell/solver.hpp"

#include <algorithm>
#include <deque>

#include "pfcell/univariate.hpp"

namespace pfcell {

std::size_t FiberSystem::space_dim() const {
    if (!eqs.empty()) return eqs.front().space_dim();
    if (!positives.empty()) return positives.front().space_dim();
    return prefix.size();
}

bool FiberSystem::chain_free() const {
    for (const auto& f : eqs)
        if (f.uses_chain()) return false;
    for (const auto& f : positives)
        if (f.uses_chain()) return false;
    return true;
}

FiberSystem FiberSystem::of_basic(const BasicSet& b, std::vector<Rat> prefix) {
    FiberSystem s;
    s.eqs = b.eqs;
    s.positives = b.positives;
    s.prefix = std::move(prefix);
    return s;
}

namespace {

Rat dyadic_floor(const Rat& x, unsigned bits) {
    mpz_class scale = mpz_class(1) << bits;
    Rat t = x * Rat(scale);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    Rat r(q, scale);
    r.canonicalize();
    return r;
}

Rat dyadic_ceil(const Rat& x, unsigned bits) { return -dyadic_floor(-x, bits); }

Interval round_out(const Interval& iv, unsigned bits) {
    return Interval(dyadic_floor(iv.lo, bits), dyadic_ceil(iv.hi, bits));
}

Box round_out(const Box& b, unsigned bits) {
    Box r;
    r.reserve(b.size());
    for (const auto& iv : b) r.push_back(round_out(iv, bits));
    return r;
}

// Full-space box: point intervals for the prefix, then the fiber box.
Box full_box(const FiberSystem& sys, const Box& fiber) {
    Box b;
    b.reserve(sys.prefix.size() + fiber.size());
    for (const auto& v : sys.prefix) b.emplace_back(v);
    for (const auto& iv : fiber) b.push_back(iv);
    return b;
}

// Substitute the prefix into a chain-free PfaffPoly and compress to a plain
// Poly over the free coordinates only.
Poly reduce_to_fiber(const PfaffPoly& f, const std::vector<Rat>& prefix) {
    if (f.uses_chain()) throw std::logic_error("reduce_to_fiber: chain polynomial");
    std::size_t total = f.poly().nvars();
    std::vector<std::optional<Rat>> sub(total);
    for (std::size_t i = 0; i < prefix.size(); ++i) sub[i] = prefix[i];
    Poly s = f.poly().substitute(sub);
    std::size_t d = f.space_dim() - prefix.size();
    std::vector<std::size_t> map(total, 0);
    for (std::size_t i = prefix.size(); i < f.space_dim(); ++i) map[i] = i - prefix.size();
    return s.remap(map, d);
}

// Inverse of a rational matrix by Gauss-Jordan with partial pivoting;
// nullopt when singular.
std::optional<std::vector<std::vector<Rat>>> invert(std::vector<std::vector<Rat>> m) {
    std::size_t n = m.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col; r < n; ++r)
            if (rat_abs(m[r][col]) > rat_abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// Greedy selection of `d` equation rows with independent midpoint gradients.
std::optional<std::vector<std::size_t>> select_square(const std::vector<std::vector<Rat>>& jmid,
                                                      std::size_t d) {
    std::size_t c = jmid.size();
    if (c < d) return std::nullopt;
    std::vector<std::vector<Rat>> work;
    std::vector<std::size_t> chosen;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t r = 0; r < c && chosen.size() < d; ++r) {
        // Row-reduce candidate against the current basis.
        std::vector<Rat> row = jmid[r];
        for (const auto& b : basis) {
            // eliminate with the pivot of b
            std::size_t p = 0;
            while (p < d && b[p] == 0) ++p;
            if (p == d) continue;
            if (row[p] != 0) {
                Rat f = row[p] / b[p];
                for (std::size_t j = 0; j < d; ++j) row[j] -= f * b[j];
            }
        }
        bool nonzero = false;
        for (const auto& v : row)
            if (v != 0) nonzero = true;
        if (nonzero) {
            basis.push_back(row);
            chosen.push_back(r);
        }
    }
    if (chosen.size() < d) return std::nullopt;
    return chosen;
}

struct KrawczykResult {
    bool contracted = false;
    Box refined;
};

// One Krawczyk test of the square system rows `subset` on fiber box X.
KrawczykResult krawczyk(const FiberSystem& sys, const std::vector<std::size_t>& subset,
                        const Box& X, const std::vector<std::vector<PfaffPoly>>& grads,
                        const Rat& eval_width) {
    std::size_t d = X.size();
    std::size_t p = sys.prefix.size();
    KrawczykResult out;
    // midpoint (dyadic to keep arithmetic small)
    std::vector<Rat> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = dyadic_floor(X[i].mid(), 48);
    for (std::size_t i = 0; i < d; ++i)
        if (!X[i].contains(y[i])) y[i] = X[i].mid();
    Box fx = full_box(sys, X);
    // interval Jacobian over X and midpoint matrix
    std::vector<std::vector<Interval>> J(d, std::vector<Interval>(d, Interval(Rat(0))));
    std::vector<std::vector<Rat>> Jm(d, std::vector<Rat>(d, Rat(0)));
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t j = 0; j < d; ++j) {
            J[r][j] = grads[subset[r]][j].eval_box(fx, eval_width);
            Jm[r][j] = J[r][j].mid();
        }
    }
    auto Yinv = invert(Jm);
    if (!Yinv) return out;
    // F(y)
    std::vector<Rat> fullpt = sys.prefix;
    fullpt.insert(fullpt.end(), y.begin(), y.end());
    std::vector<Interval> Fy(d, Interval(Rat(0)));
    for (std::size_t r = 0; r < d; ++r) {
        const PfaffPoly& f = sys.eqs[subset[r]];
        if (f.uses_chain()) Fy[r] = f.eval_interval(fullpt, eval_width);
        else Fy[r] = Interval(f.eval_exact(fullpt));
    }
    // K = y - Y F(y) + (I - Y J)(X - y)
    std::vector<Interval> K(d, Interval(Rat(0)));
    for (std::size_t i = 0; i < d; ++i) {
        Interval acc{y[i]};
        for (std::size_t j = 0; j < d; ++j) acc = acc - (*Yinv)[i][j] * Fy[j];
        for (std::size_t j = 0; j < d; ++j) {
            Interval s(Rat(0));
            for (std::size_t t = 0; t < d; ++t) s = s + Interval((*Yinv)[i][t]) * J[t][j];
            Interval coeff = (i == j ? Interval(Rat(1)) : Interval(Rat(0))) - s;
            acc = acc + coeff * (X[j] - Interval(y[j]));
        }
        K[i] = acc;
    }
    bool inside = true;
    for (std::size_t i = 0; i < d; ++i)
        if (!(X[i].lo < K[i].lo && K[i].hi < X[i].hi)) inside = false;
    if (!inside) return out;
    out.contracted = true;
    out.refined.reserve(d);
    for (std::size_t i = 0; i < d; ++i) out.refined.push_back(imeet(K[i], X[i]));
    out.refined = round_out(out.refined, 160);
    return out;
}

std::vector<std::vector<PfaffPoly>> fiber_gradients(const FiberSystem& sys) {
    std::size_t p = sys.prefix.size();
    std::size_t d = sys.free_dims();
    std::vector<std::vector<PfaffPoly>> grads;
    grads.reserve(sys.eqs.size());
    for (const auto& f : sys.eqs) {
        std::vector<PfaffPoly> row;
        row.reserve(d);
        for (std::size_t j = 0; j < d; ++j) row.push_back(f.derive(p + j));
        grads.push_back(std::move(row));
    }
    return grads;
}

}  // namespace

std::vector<Rat> CertifiedPoint::full_point_mid() const {
    std::vector<Rat> pt = system->prefix;
    for (const auto& iv : box) pt.push_back(iv.mid());
    return pt;
}

bool CertifiedPoint::refine() {
    auto grads = fiber_gradients(*system);
    auto res = krawczyk(*system, eq_subset, box, grads, Rat(1, mpz_class(1) << 60));
    if (!res.contracted) {
        // plain bisection fallback via re-test on halves is not available
        // here; keep the box.
        return false;
    }
    bool shrunk = box_max_width(res.refined) < box_max_width(box);
    box = res.refined;
    return shrunk;
}

void CertifiedPoint::refine_below(const Rat& width, int max_rounds) {
    for (int i = 0; i < max_rounds && box_max_width(box) >= width; ++i)
        if (!refine()) break;
}

namespace {

// Exact decision for chain-free one-dimensional fibers.
NonemptyResult decide_univar(const FiberSystem& sys, const Interval& range) {
    NonemptyResult out;
    std::vector<UPoly> eqs, pos;
    for (const auto& f : sys.eqs) {
        Poly r = reduce_to_fiber(f, sys.prefix);
        if (r.is_zero()) continue;  // identically satisfied
        eqs.emplace_back(r.univariate_in(0));
        if (eqs.back().degree() <= 0) {
            // nonzero constant equation: empty
            out.outcome = Cert::False;
            return out;
        }
    }
    for (const auto& f : sys.positives) {
        Poly r = reduce_to_fiber(f, sys.prefix);
        pos.emplace_back(r.univariate_in(0));
        if (pos.back().is_zero()) {
            out.outcome = Cert::False;  // 0 > 0
            return out;
        }
    }
    auto check_positives = [&](const Rat& t) {
        for (const auto& g : pos)
            if (g.eval(t) <= 0) return false;
        return true;
    };
    if (!eqs.empty()) {
        // candidate points: roots of the gcd of all equations
        UPoly g = eqs[0];
        for (std::size_t i = 1; i < eqs.size(); ++i) g = ugcd(g, eqs[i]);
        if (g.degree() <= 0) {
            out.outcome = Cert::False;  // no common root
            return out;
        }
        auto roots = isolate_roots(g, range.lo, range.hi);
        for (auto& r : roots) {
            if (r.is_exact()) {
                if (check_positives(r.value_if_exact())) {
                    out.outcome = Cert::True;
                    auto pt = sys.prefix;
                    pt.push_back(r.value_if_exact());
                    out.rational_witness = pt;
                    return out;
                }
                continue;
            }
            // irrational root: positives have constant sign near it unless
            // they share it; decide by Sturm on each positive's value
            bool ok = true;
            for (const auto& gp : pos) {
                UPoly shared = ugcd(r.witness, gp);
                bool vanishes = false;
                if (shared.degree() >= 1) {
                    auto sc = sturm_chain(shared);
                    if (sturm_count(sc, r.lo, r.hi) > 0) vanishes = true;
                }
                if (vanishes) {
                    ok = false;
                    break;
                }
                IsolatedRoot t = r;
                // refine until the positive's sign is constant on the interval
                for (int round = 0; round < 512; ++round) {
                    Interval v = gp.eval_box(Interval(t.lo, t.hi));
                    if (v.lo > 0) break;
                    if (v.hi < 0) {
                        ok = false;
                        break;
                    }
                    t.refine();
                }
                if (!ok) break;
            }
            if (ok) {
                out.outcome = Cert::True;
                return out;  // equational witness exists; no rational point
            }
        }
        out.outcome = Cert::False;
        return out;
    }
    // open case: sign pattern over the partition by all roots of positives
    std::vector<Rat> cuts{range.lo, range.hi};
    for (const auto& g : pos) {
        auto roots = isolate_roots(g, range.lo, range.hi);
        for (auto& r : roots) {
            r.refine_below(Rat(1, 1 << 12));
            cuts.push_back(r.lo);
            cuts.push_back(r.hi);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // test midpoints of consecutive cuts and the cut points themselves
    std::vector<Rat> samples = cuts;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) samples.push_back((cuts[i] + cuts[i + 1]) / 2);
    for (const auto& t : samples) {
        if (t < range.lo || t > range.hi) continue;
        if (check_positives(t)) {
            out.outcome = Cert::True;
            auto pt = sys.prefix;
            pt.push_back(t);
            out.rational_witness = pt;
            return out;
        }
    }
    out.outcome = Cert::False;
    return out;
}

// Checks whether all remaining equations vanish at the certified point of a
// square subsystem: True/False decided exactly for chain-free systems via an
// augmented emptiness query; Unresolved otherwise.
Cert confirm_remaining_eqs(const FiberSystem& sys, CertifiedPoint& pt,
                           const SolverOptions& opts, int depth);

// Core subdivision engine shared by decide_nonempty and solve_points.
struct Explorer {
    const FiberSystem& sys;
    SolverOptions opts;
    std::vector<std::vector<PfaffPoly>> grads;
    std::shared_ptr<const FiberSystem> shared_sys;
    int recursion_depth = 0;

    bool prune(const Box& fiber) const {
        Box fx = full_box(sys, fiber);
        for (const auto& f : sys.eqs) {
            Interval v = f.eval_box(fx, opts.precision.start_width);
            if (!v.contains_zero()) return true;
        }
        for (const auto& g : sys.positives) {
            Interval v = g.eval_box(fx, opts.precision.start_width);
            if (v.hi <= 0) return true;
        }
        return false;
    }
};

Cert confirm_positives(const FiberSystem& sys, CertifiedPoint& pt, const PrecisionPolicy& prec) {
    for (const auto& g : sys.positives) {
        Sign s = sign_at_certified(g, pt, prec);
        if (s == Sign::Unresolved) return Cert::Unresolved;
        if (s != Sign::Positive) return Cert::False;
    }
    return Cert::True;
}

NonemptyResult decide_nonempty_impl(const FiberSystem& sys, const SolverOptions& opts,
                                    Box fiber0, int depth);

Cert confirm_remaining_eqs(const FiberSystem& sys, CertifiedPoint& pt, const SolverOptions& opts,
                           int depth) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < sys.eqs.size(); ++i)
        if (std::find(pt.eq_subset.begin(), pt.eq_subset.end(), i) == pt.eq_subset.end())
            rest.push_back(i);
    if (rest.empty()) return Cert::True;
    // Quick interval screen with refinement.
    for (int round = 0; round < 8; ++round) {
        bool all_zeroish = true;
        for (std::size_t i : rest) {
            Box fx = full_box(sys, pt.box);
            Interval v = sys.eqs[i].eval_box(fx, Rat(1, mpz_class(1) << 80));
            if (!v.contains_zero()) return Cert::False;
            if (v.width() > Rat(1, 1 << 20)) all_zeroish = false;
        }
        if (all_zeroish) break;
        if (!pt.refine()) break;
    }
    if (depth > 2 || !sys.chain_free()) return Cert::Unresolved;
    // Exact confirmation: the augmented system has a solution in the box iff
    // every remaining equation vanishes at the (unique) subsystem root.
    FiberSystem aug = sys;
    SolverOptions aopts = opts;
    aopts.max_depth = std::min(opts.max_depth, 24);
    NonemptyResult sub = decide_nonempty_impl(aug, aopts, pt.box, depth + 1);
    if (sub.outcome == Cert::True) return Cert::True;
    if (sub.outcome == Cert::False) return Cert::False;
    return Cert::Unresolved;
}

NonemptyResult decide_nonempty_impl(const FiberSystem& sys, const SolverOptions& opts, Box fiber0,
                                    int depth) {
    NonemptyResult out;
    std::size_t d = sys.free_dims();
    if (d == 0) {
        // pure sign evaluation at the prefix point
        for (const auto& f : sys.eqs) {
            Sign s = f.sign_at(sys.prefix, opts.precision);
            if (s == Sign::Unresolved) return out;
            if (s != Sign::Zero) {
                out.outcome = Cert::False;
                return out;
            }
        }
        for (const auto& g : sys.positives) {
            Sign s = g.sign_at(sys.prefix, opts.precision);
            if (s == Sign::Unresolved) return out;
            if (s != Sign::Positive) {
                out.outcome = Cert::False;
                return out;
            }
        }
        out.outcome = Cert::True;
        out.rational_witness = sys.prefix;
        return out;
    }
    if (d == 1 && sys.chain_free()) {
        try {
            return decide_univar(sys, fiber0.at(0));
        } catch (const std::domain_error&) {
            // fall through to subdivision (should not happen)
        }
    }
    Explorer ex{sys, opts, fiber_gradients(sys), std::make_shared<FiberSystem>(sys), depth};
    std::deque<std::pair<Box, int>> queue;
    queue.emplace_back(fiber0, 0);
    std::size_t processed = 0;
    bool exhausted = false;
    while (!queue.empty()) {
        if (++processed > opts.max_boxes) {
            exhausted = true;
            break;
        }
        auto [B, lvl] = queue.front();
        queue.pop_front();
        if (ex.prune(B)) continue;
        Rat width = box_max_width(B);
        if (width <= opts.certify_width || lvl >= opts.max_depth) {
            // YES attempts
            if (sys.eqs.empty()) {
                std::vector<Rat> c(sys.prefix);
                for (const auto& iv : B) c.push_back(dyadic_floor(iv.mid(), 40));
                for (std::size_t i = 0; i < d; ++i)
                    if (!B[i].contains(c[sys.prefix.size() + i]))
                        c[sys.prefix.size() + i] = B[i].mid();
                bool all_pos = true;
                for (const auto& g : sys.positives) {
                    Sign s = g.sign_at(c, opts.precision);
                    if (s != Sign::Positive) {
                        all_pos = false;
                        break;
                    }
                }
                if (all_pos) {
                    out.outcome = Cert::True;
                    out.rational_witness = c;
                    return out;
                }
            } else {
                // inflate slightly to capture boundary roots
                Box inflated = B;
                Rat pad = width / 8 + Rat(1, mpz_class(1) << 40);
                for (auto& iv : inflated) iv = Interval(iv.lo - pad, iv.hi + pad);
                Box fx = full_box(sys, inflated);
                std::vector<std::vector<Rat>> jmid(sys.eqs.size(), std::vector<Rat>(d));
                for (std::size_t r = 0; r < sys.eqs.size(); ++r)
                    for (std::size_t j = 0; j < d; ++j)
                        jmid[r][j] = ex.grads[r][j].eval_box(fx, opts.precision.start_width).mid();
                auto subset = select_square(jmid, d);
                if (subset) {
                    auto kr = krawczyk(sys, *subset, inflated, ex.grads,
                                       opts.precision.start_width);
                    if (kr.contracted) {
                        CertifiedPoint pt{kr.refined, *subset, ex.shared_sys};
                        pt.refine_below(Rat(1, 1 << 20), 8);
                        Cert eqs_ok = confirm_remaining_eqs(sys, pt, opts, depth);
                        Cert pos_ok =
                            eqs_ok == Cert::True ? confirm_positives(sys, pt, opts.precision)
                                                 : Cert::False;
                        if (eqs_ok == Cert::True && pos_ok == Cert::True) {
                            out.outcome = Cert::True;
                            out.certified_witness = pt;
                            return out;
                        }
                        if (eqs_ok == Cert::Unresolved || pos_ok == Cert::Unresolved)
                            exhausted = true;
                        // the unique subsystem root here fails the system:
                        // discard the box
                        continue;
                    }
                }
                if (lvl >= opts.max_depth) {
                    exhausted = true;
                    continue;
                }
            }
            if (lvl >= opts.max_depth) {
                if (!sys.eqs.empty()) exhausted = true;
                continue;
            }
        }
        // subdivide widest axis
        std::size_t axis = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (B[i].width() > B[axis].width()) axis = i;
        Rat m = dyadic_floor(B[axis].mid(), 52);
        if (!(B[axis].lo < m && m < B[axis].hi)) m = B[axis].mid();
        Box left = B, right = B;
        left[axis] = Interval(B[axis].lo, m);
        right[axis] = Interval(m, B[axis].hi);
        queue.emplace_back(std::move(left), lvl + 1);
        queue.emplace_back(std::move(right), lvl + 1);
    }
    out.outcome = exhausted ? Cert::Unresolved : Cert::False;
    return out;
}

}  // namespace

NonemptyResult decide_nonempty(const FiberSystem& system, const SolverOptions& opts,
                               std::optional<Box> fiber_box) {
    Box fb = fiber_box ? *fiber_box : unit_box(system.free_dims());
    if (fb.size() != system.free_dims())
        throw std::invalid_argument("decide_nonempty: fiber box arity mismatch");
    return decide_nonempty_impl(system, opts, fb, 0);
}

std::vector<CertifiedPoint> solve_points(const FiberSystem& system, const SolverOptions& opts,
                                         std::optional<Box> fiber_box) {
    std::size_t d = system.free_dims();
    Box fb = fiber_box ? *fiber_box : unit_box(d);
    if (system.eqs.empty()) throw std::invalid_argument("solve_points: no equations");
    auto shared_sys = std::make_shared<FiberSystem>(system);
    auto grads = fiber_gradients(system);
    Explorer ex{system, opts, grads, shared_sys, 0};

    std::vector<CertifiedPoint> found;
    std::deque<std::pair<Box, int>> queue;
    queue.emplace_back(fb, 0);
    std::size_t processed = 0;
    while (!queue.empty()) {
        if (++processed > opts.max_boxes)
            throw std::runtime_error("solve_points: box budget exhausted");
        auto [B, lvl] = queue.front();
        queue.pop_front();
        if (ex.prune(B)) continue;
        // skip boxes already inside a certified region
        bool covered = false;
        for (const auto& pt : found) {
            bool inside = true;
            for (std::size_t i = 0; i < d; ++i)
                if (!(pt.box[i].lo <= B[i].lo && B[i].hi <= pt.box[i].hi)) inside = false;
            if (inside) {
                covered = true;
                break;
            }
        }
        if (covered) continue;
        Rat width = box_max_width(B);
        if (width <= opts.certify_width) {
            Box inflated = B;
            Rat pad = width / 8 + Rat(1, mpz_class(1) << 40);
            for (auto& iv : inflated) iv = Interval(iv.lo - pad, iv.hi + pad);
            Box fx = full_box(system, inflated);
            std::vector<std::vector<Rat>> jmid(system.eqs.size(), std::vector<Rat>(d));
            for (std::size_t r = 0; r < system.eqs.size(); ++r)
                for (std::size_t j = 0; j < d; ++j)
                    jmid[r][j] = grads[r][j].eval_box(fx, opts.precision.start_width).mid();
            auto subset = select_square(jmid, d);
            if (subset) {
                auto kr = krawczyk(system, *subset, inflated, grads, opts.precision.start_width);
                if (kr.contracted) {
                    CertifiedPoint pt{kr.refined, *subset, shared_sys};
                    pt.refine_below(Rat(1, 1 << 24), 10);
                    Cert eqs_ok = confirm_remaining_eqs(system, pt, opts, 0);
                    if (eqs_ok == Cert::Unresolved)
                        throw SolverUnresolved("solve_points: cannot confirm extra equations");
                    if (eqs_ok == Cert::True) {
                        Cert pos_ok = confirm_positives(system, pt, opts.precision);
                        if (pos_ok == Cert::Unresolved)
                            throw SolverUnresolved("solve_points: constraint sign unresolved");
                        if (pos_ok == Cert::True) {
                            // dedup: drop if the same root as an existing one
                            bool dup = false;
                            for (auto& other : found) {
                                bool overlap = true;
                                for (std::size_t i = 0; i < d; ++i)
                                    if (!pt.box[i].intersects(other.box[i])) overlap = false;
                                if (overlap) {
                                    dup = true;
                                    break;
                                }
                            }
                            if (!dup) found.push_back(pt);
                        }
                    }
                    continue;  // unique subsystem root handled either way
                }
            }
            if (lvl >= opts.max_depth)
                throw SolverUnresolved("solve_points: certification failed at depth cap");
        }
        if (lvl >= opts.max_depth)
            throw SolverUnresolved("solve_points: depth cap before certification");
        std::size_t axis = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (B[i].width() > B[axis].width()) axis = i;
        Rat m = dyadic_floor(B[axis].mid(), 52);
        if (!(B[axis].lo < m && m < B[axis].hi)) m = B[axis].mid();
        Box left = B, right = B;
        left[axis] = Interval(B[axis].lo, m);
        right[axis] = Interval(m, B[axis].hi);
        queue.emplace_back(std::move(left), lvl + 1);
        queue.emplace_back(std::move(right), lvl + 1);
    }
    // order deterministically by box lower corners
    std::sort(found.begin(), found.end(), [](const CertifiedPoint& a, const CertifiedPoint& b) {
        for (std::size_t i = 0; i < a.box.size(); ++i) {
            if (a.box[i].lo != b.box[i].lo) return a.box[i].lo < b.box[i].lo;
        }
        return false;
    });
    return found;
}

Sign sign_at_certified(const PfaffPoly& f, CertifiedPoint& p, const PrecisionPolicy& policy) {
    for (int round = 0; round <= policy.max_escalations; ++round) {
        Box fx = full_box(*p.system, p.box);
        Interval v = f.eval_box(fx, policy.start_width);
        if (v.lo > 0) return Sign::Positive;
        if (v.hi < 0) return Sign::Negative;
        if (v.is_point() && v.lo == 0) return Sign::Zero;
        if (!p.refine()) break;
    }
    return Sign::Unresolved;
}

Cert member_at_certified(const BasicSet& basic, CertifiedPoint& p, const PrecisionPolicy& policy) {
    // Equations: certified zero needs the augmented-system route; here a
    // narrow straddling enclosure after refinement is treated as unresolved.
    for (const auto& h : basic.eqs) {
        Sign s = sign_at_certified(h, p, policy);
        if (s == Sign::Positive || s == Sign::Negative) return Cert::False;
        if (s == Sign::Unresolved) {
            FiberSystem sub = *p.system;
            sub.eqs.push_back(h);
            SolverOptions opts;
            auto res = decide_nonempty(sub, opts, p.box);
            if (res.outcome == Cert::False) return Cert::False;
            if (res.outcome == Cert::Unresolved) return Cert::Unresolved;
        }
    }
    for (const auto& g : basic.positives) {
        Sign s = sign_at_certified(g, p, policy);
        if (s == Sign::Unresolved) return Cert::Unresolved;
        if (s != Sign::Positive) return Cert::False;
    }
    return Cert::True;
}

}  // namespace pfcell

#include "pfcell/univariate.hpp"

#include <algorithm>

namespace pfcell {

UPoly UPoly::constant(const Rat& k) {
    UPoly p;
    if (k != 0) p.c = {k};
    return p;
}

UPoly UPoly::from_roots(const std::vector<Rat>& roots) {
    UPoly p;
    p.c = {Rat(1)};
    for (const auto& r : roots) {
        UPoly lin;
        lin.c = {-r, Rat(1)};
        p = p * lin;
    }
    return p;
}

void UPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat UPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Interval UPoly::eval_box(const Interval& x) const {
    Interval acc{Rat(0)};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Interval(*it);
    return acc;
}

UPoly UPoly::derivative() const {
    UPoly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(Rat((long)i) * c[i]);
    d.trim();
    return d;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    UPoly m = *this;
    Rat l = lead();
    for (auto& k : m.c) k /= l;
    return m;
}

UPoly UPoly::operator+(const UPoly& o) const {
    UPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

UPoly UPoly::operator-(const UPoly& o) const {
    UPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.trim();
    return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
    UPoly r;
    if (is_zero() || o.is_zero()) return r;
    r.c.assign(c.size() + o.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
}

UPoly urem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("urem: division by zero");
    UPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rat q = r.lead() / b.lead();
        int shift = r.degree() - b.degree();
        for (int i = 0; i <= b.degree(); ++i) r.c[i + shift] -= q * b.c[i];
        r.trim();
    }
    return r;
}

UPoly ugcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = urem(x, y);
        x = y;
        y = r.monic();  // normalization keeps coefficient growth down
    }
    return x.monic();
}

UPoly squarefree_part(const UPoly& p) {
    if (p.is_zero() || p.degree() == 0) return p.monic();
    UPoly g = ugcd(p, p.derivative());
    if (g.degree() == 0) return p.monic();
    // exact division p / g
    UPoly num = p, q;
    q.c.assign(num.degree() - g.degree() + 1, Rat(0));
    while (!num.is_zero() && num.degree() >= g.degree()) {
        Rat k = num.lead() / g.lead();
        int shift = num.degree() - g.degree();
        q.c[shift] = k;
        for (int i = 0; i <= g.degree(); ++i) num.c[i + shift] -= k * g.c[i];
        num.trim();
    }
    if (!num.is_zero()) throw std::logic_error("squarefree_part: inexact division");
    q.trim();
    return q.monic();
}

std::vector<UPoly> sturm_chain(const UPoly& squarefree) {
    std::vector<UPoly> chain;
    if (squarefree.is_zero()) return chain;
    chain.push_back(squarefree);
    UPoly d = squarefree.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        UPoly r = urem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        for (auto& k : r.c) k = -k;
        chain.push_back(r.monic());
        if (chain.back().degree() == 0) break;
    }
    return chain;
}

namespace {
int sign_variations(const std::vector<UPoly>& chain, const Rat& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_of(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}
}  // namespace

int sturm_count(const std::vector<UPoly>& chain, const Rat& a, const Rat& b) {
    if (chain.empty()) return 0;
    return sign_variations(chain, a) - sign_variations(chain, b);
}

void IsolatedRoot::refine() {
    if (is_exact()) return;
    Rat m = (lo + hi) / 2;
    Rat fm = witness.eval(m);
    if (fm == 0) {
        lo = hi = m;
        return;
    }
    // squarefree witness changes sign across its single root in (lo,hi)
    if (sign_of(witness.eval(lo)) * sign_of(fm) < 0) hi = m;
    else lo = m;
}

void IsolatedRoot::refine_below(const Rat& width) {
    while (!is_exact() && hi - lo >= width) refine();
}

namespace {
// Exact division by (x - r); throws if r is not a root.
UPoly deflate(const UPoly& p, const Rat& r) {
    if (p.eval(r) != 0) throw std::logic_error("deflate: not a root");
    std::vector<Rat> q(p.c.size() - 1, Rat(0));
    Rat carry = p.c.back();
    for (int i = (int)p.c.size() - 2; i >= 0; --i) {
        q[i] = carry;
        carry = p.c[i] + carry * r;
    }
    return UPoly(std::move(q));
}
}  // namespace

std::vector<IsolatedRoot> isolate_roots(const UPoly& p, const Rat& lo, const Rat& hi) {
    std::vector<IsolatedRoot> out;
    if (p.is_zero()) throw std::domain_error("isolate_roots: zero polynomial");
    UPoly sf = squarefree_part(p);
    if (sf.degree() <= 0) return out;

    // Rational roots discovered at probe points are deflated out so that
    // Sturm counting never sees a root at a segment endpoint.
    std::vector<Rat> exact;
    struct Seg {
        Rat a, b;
        int count;
    };
    std::vector<std::pair<Rat, Rat>> isolated;
    bool restart = true;
    while (restart) {
        restart = false;
        isolated.clear();
        while (sf.degree() > 0 && sf.eval(lo) == 0) {
            exact.push_back(lo);
            sf = deflate(sf, lo);
        }
        while (sf.degree() > 0 && sf.eval(hi) == 0) {
            exact.push_back(hi);
            sf = deflate(sf, hi);
        }
        if (sf.degree() <= 0) break;
        auto chain = sturm_chain(sf);
        std::vector<Seg> work;
        work.push_back({lo, hi, sturm_count(chain, lo, hi)});
        while (!work.empty()) {
            Seg s = work.back();
            work.pop_back();
            if (s.count <= 0) continue;
            Rat m = (s.a + s.b) / 2;
            if (sf.eval(m) == 0) {
                exact.push_back(m);
                sf = deflate(sf, m);
                restart = true;
                break;
            }
            if (s.count == 1) {
                isolated.emplace_back(s.a, s.b);
                continue;
            }
            int left = sturm_count(chain, s.a, m);
            int right = s.count - left;
            if (left > 0) work.push_back({s.a, m, left});
            if (right > 0) work.push_back({m, s.b, right});
        }
    }
    for (const auto& r : exact) {
        UPoly lin;
        lin.c = {-r, Rat(1)};
        out.push_back(IsolatedRoot{lin, r, r});
    }
    for (const auto& [a, b] : isolated) {
        IsolatedRoot root{sf, a, b};
        // Recognize rational roots: once the interval is small enough, the
        // root is the simplest rational inside iff it is rational at all.
        for (int round = 0; round < 3 && !root.is_exact(); ++round) {
            root.refine_below(Rat(1, mpz_class(1) << (16 << round)));
            if (root.is_exact()) break;
            Rat cand = simplest_in(root.lo, root.hi);
            if (sf.eval(cand) == 0 && root.lo < cand && cand < root.hi) {
                root.lo = root.hi = cand;
            }
        }
        out.push_back(std::move(root));
    }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
        return compare_roots(a, b) < 0;
    });
    return out;
}

int compare_root_rat(const IsolatedRoot& a, const Rat& r) {
    if (a.is_exact()) return a.lo < r ? -1 : (a.lo == r ? 0 : 1);
    if (a.witness.eval(r) == 0 && a.lo < r && r < a.hi) return 0;
    IsolatedRoot t = a;
    while (t.lo < r && r < t.hi) t.refine();
    if (t.is_exact()) return t.lo < r ? -1 : (t.lo == r ? 0 : 1);
    return t.hi <= r ? -1 : 1;
}

int compare_roots(const IsolatedRoot& a, const IsolatedRoot& b) {
    if (a.is_exact()) return -compare_root_rat(b, a.lo);
    if (b.is_exact()) return compare_root_rat(a, b.lo);
    IsolatedRoot x = a, y = b;
    UPoly g = ugcd(x.witness, y.witness);
    bool maybe_equal = g.degree() >= 1;
    std::vector<UPoly> gchain;
    if (maybe_equal) gchain = sturm_chain(g);
    for (int round = 0; round < 4096; ++round) {
        if (x.hi <= y.lo) {
            // touching intervals: the roots are interior, so strict order holds
            return -1;
        }
        if (y.hi <= x.lo) return 1;
        if (maybe_equal) {
            // Equal iff both are the single root of g in the hull.
            Rat hl = rat_min(x.lo, y.lo), hh = rat_max(x.hi, y.hi);
            int in_hull = sturm_count(gchain, hl, hh);
            int in_x = sturm_count(gchain, x.lo, x.hi);
            int in_y = sturm_count(gchain, y.lo, y.hi);
            if (in_hull == 1 && in_x == 1 && in_y == 1) return 0;
            if (in_x == 0 || in_y == 0) maybe_equal = false;
        }
        x.refine();
        y.refine();
        if (x.is_exact() && y.is_exact())
            return x.lo < y.lo ? -1 : (x.lo == y.lo ? 0 : 1);
    }
    throw std::runtime_error("compare_roots: refinement limit reached");
}

}  // namespace pfcell

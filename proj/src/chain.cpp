#include "pfcell/chain.hpp"

#include <algorithm>

namespace pfcell {

PfaffianChain::PfaffianChain(std::size_t ambient_dim, std::vector<std::vector<Poly>> chain_polys,
                             Box domain, std::vector<std::shared_ptr<const ChainEvaluator>> evaluators)
    : ambient_dim_(ambient_dim),
      polys_(std::move(chain_polys)),
      domain_(std::move(domain)),
      evaluators_(std::move(evaluators)) {
    std::size_t r = polys_.size();
    if (evaluators_.size() != r)
        throw std::invalid_argument("chain: one evaluator per chain function required");
    if (domain_.size() != ambient_dim_)
        throw std::invalid_argument("chain: domain arity mismatch");
    for (std::size_t j = 0; j < ambient_dim_; ++j)
        if (!(domain_[j].lo <= 0 && domain_[j].hi >= 1))
            throw std::invalid_argument("chain: domain must contain the unit box");
    degrees_.resize(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        if (polys_[i].size() != ambient_dim_)
            throw std::invalid_argument("chain: derivation row arity mismatch");
        for (std::size_t j = 0; j < ambient_dim_; ++j) {
            const Poly& p = polys_[i][j];
            if (p.nvars() != ambient_dim_ + r)
                throw std::invalid_argument("chain: derivation slot count mismatch");
            // Triangularity: no chain symbol u_m with m > i (slots are
            // ambient_dim_ + m - 1 for u_m).
            for (std::size_t m = i + 1; m < r; ++m)
                if (p.uses_slot(ambient_dim_ + m))
                    throw std::invalid_argument("chain: triangularity violated");
            degrees_[i] = std::max(degrees_[i], p.total_degree());
        }
    }
}

std::shared_ptr<const PfaffianChain> PfaffianChain::empty(std::size_t ambient_dim) {
    return std::make_shared<PfaffianChain>(ambient_dim, std::vector<std::vector<Poly>>{},
                                           unit_box(ambient_dim),
                                           std::vector<std::shared_ptr<const ChainEvaluator>>{});
}

const Poly& PfaffianChain::derivation(std::size_t chain_index, std::size_t axis) const {
    return polys_.at(chain_index).at(axis);
}

unsigned PfaffianChain::max_chain_degree() const {
    unsigned d = 0;
    for (unsigned g : degrees_) d = std::max(d, g);
    return d;
}

const ChainEvaluator& PfaffianChain::evaluator(std::size_t chain_index) const {
    return *evaluators_.at(chain_index);
}

std::vector<Interval> PfaffianChain::eval_symbols(const std::vector<Rat>& x,
                                                  const Rat& target_width) const {
    if (x.size() < ambient_dim_)
        throw std::invalid_argument("eval_symbols: point arity too small");
    for (std::size_t j = 0; j < ambient_dim_; ++j)
        if (!domain_[j].contains(x[j]))
            throw std::domain_error("eval_symbols: point outside chain domain");
    std::vector<Interval> out;
    out.reserve(length());
    std::vector<Rat> head(x.begin(), x.begin() + ambient_dim_);
    for (std::size_t i = 0; i < length(); ++i)
        out.push_back(evaluators_[i]->eval(head, target_width));
    return out;
}

Interval ExpEvaluator::eval(const std::vector<Rat>& x, const Rat& target_width) const {
    const Rat& t = x.at(axis_);
    // exp(t) for t in [-1, 1] via Taylor at 0 with geometric tail bound:
    // |tail after n terms| <= |t|^(n+1)/(n+1)! * 1/(1-|t|/(n+2)).
    Rat at = rat_abs(t);
    if (at > 1) throw std::domain_error("exp evaluator: |t| > 1 unsupported");
    Rat sum(1), term(1);
    unsigned n = 0;
    while (true) {
        ++n;
        term *= t;
        term /= Rat((long)n);
        sum += term;
        Rat tail = rat_abs(term) * at / Rat((long)(n + 1));
        // crude geometric bound: factor 2 covers 1/(1 - at/(n+2)) for n >= 1
        tail *= 2;
        if (tail * 2 < target_width || n > 200) {
            return Interval(sum - tail, sum + tail);
        }
    }
}

SeriesODEEvaluator::SeriesODEEvaluator(std::size_t axis, std::size_t index, std::vector<Poly> rhs,
                                       std::vector<Rat> initial_values)
    : axis_(axis), index_(index), rhs_(std::move(rhs)), initial_(std::move(initial_values)) {
    if (rhs_.size() > 2) throw std::invalid_argument("series ODE evaluator: length > 2");
    if (rhs_.size() != initial_.size())
        throw std::invalid_argument("series ODE evaluator: one initial value per component");
    for (const auto& p : rhs_)
        if (p.nvars() != 1 + rhs_.size())
            throw std::invalid_argument("series ODE evaluator: rhs over (t, u...) expected");
    if (index_ >= rhs_.size()) throw std::invalid_argument("series ODE evaluator: bad index");
}

std::string SeriesODEEvaluator::tag() const {
    return "ode:" + std::to_string(axis_) + ":" + std::to_string(index_);
}

namespace {

// Truncated power series with interval coefficients.
using Series = std::vector<Interval>;

Series series_mul(const Series& a, const Series& b, std::size_t order) {
    Series r(order, Interval(Rat(0)));
    for (std::size_t i = 0; i < a.size() && i < order; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < order; ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Series of P(t0 + tau, u_1..u_r) in local time tau given series for each u.
// Slot 0 of p is absolute time.
Series series_of_poly(const Poly& p, const Interval& t0, const std::vector<Series>& u,
                      std::size_t order) {
    Series acc(order, Interval(Rat(0)));
    Series tser = {t0, Interval(Rat(1))};  // t0 + tau
    for (const auto& [mono, coef] : p.terms()) {
        Series term(1, Interval(coef));
        for (std::uint32_t e = 0; e < mono[0]; ++e) term = series_mul(term, tser, order);
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::uint32_t e = 0; e < mono[1 + i]; ++e) term = series_mul(term, u[i], order);
        for (std::size_t i = 0; i < term.size() && i < order; ++i) acc[i] = acc[i] + term[i];
    }
    return acc;
}

// Taylor coefficient table for the solution with given 0-th coefficients,
// via the ODE recursion c_{j+1} = f_j / (j+1).
std::vector<Series> taylor_table(const std::vector<Poly>& rhs, const Interval& t0,
                                 const std::vector<Interval>& c0, std::size_t order) {
    std::size_t r = rhs.size();
    std::vector<Series> su(r);
    for (std::size_t i = 0; i < r; ++i) {
        su[i].assign(order + 1, Interval(Rat(0)));
        su[i][0] = c0[i];
    }
    for (std::size_t j = 0; j < order; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
            Series f = series_of_poly(rhs[i], t0, su, order);
            su[i][j + 1] = Rat(1, (long)(j + 1)) * f[j];
        }
    }
    return su;
}

}  // namespace

Interval SeriesODEEvaluator::eval(const std::vector<Rat>& x, const Rat& target_width) const {
    Rat t_end = x.at(axis_);
    std::size_t r = rhs_.size();
    std::vector<Interval> u;
    for (const auto& v : initial_) u.emplace_back(v);
    if (t_end == 0) return u[index_];
    int dir = t_end > 0 ? 1 : -1;
    Rat remaining = rat_abs(t_end);

    unsigned steps = 16;
    const unsigned order = 10;
    for (int escalation = 0; escalation < 6; ++escalation, steps *= 2) {
        std::vector<Interval> state = u;
        Rat h = remaining / Rat((long)steps);
        Rat hs = Rat(dir) * h;
        Interval tau_range = hs > 0 ? Interval(Rat(0), hs) : Interval(hs, Rat(0));
        bool ok = true;
        for (unsigned s = 0; s < steps && ok; ++s) {
            Rat t0 = Rat((long)s) * hs;
            Interval t_range(rat_min(t0, t0 + hs), rat_max(t0, t0 + hs));
            // A-priori solution enclosure over the step by Picard iteration
            // with inflation.
            std::vector<Interval> enc = state;
            for (auto& e : enc) e = Interval(e.lo - h, e.hi + h);
            bool contracted = false;
            for (int it = 0; it < 30; ++it) {
                std::vector<Interval> next(r, Interval(Rat(0)));
                Box args;
                args.push_back(t_range);
                for (const auto& e : enc) args.push_back(e);
                bool inside = true;
                for (std::size_t i = 0; i < r; ++i) {
                    Interval d = rhs_[i].eval_box(args);
                    Interval slope = tau_range * d;
                    next[i] = Interval(state[i].lo + slope.lo, state[i].hi + slope.hi);
                    if (!(enc[i].contains(next[i]))) inside = false;
                }
                if (inside) {
                    enc = next;
                    contracted = true;
                    break;
                }
                for (std::size_t i = 0; i < r; ++i) {
                    Interval grown = ihull(enc[i], next[i]);
                    Rat pad = grown.width() / 4 + Rat(1, 1000000);
                    enc[i] = Interval(grown.lo - pad, grown.hi + pad);
                }
            }
            if (!contracted) {
                ok = false;
                break;
            }
            // Taylor step: coefficients at the step start, plus the order-th
            // coefficient recomputed over the enclosure (Lagrange form).
            auto su = taylor_table(rhs_, Interval(t0), state, order);
            auto se = taylor_table(rhs_, t_range, enc, order);
            std::vector<Interval> new_state(r, Interval(Rat(0)));
            for (std::size_t i = 0; i < r; ++i) {
                Interval acc(Rat(0));
                Interval hp(Rat(1));
                Interval hv{hs};
                for (std::size_t j = 0; j < order; ++j) {
                    acc = acc + su[i][j] * hp;
                    hp = hp * hv;
                }
                acc = acc + se[i][order] * hp;
                new_state[i] = acc;
            }
            state = new_state;
        }
        if (ok && state[index_].width() <= target_width) return state[index_];
        if (ok && escalation == 5) return state[index_];
    }
    throw std::runtime_error("series ODE evaluator: no contraction (divergence?)");
}

std::shared_ptr<const ChainEvaluator> make_evaluator_from_tag(
    const std::string& tag, std::size_t chain_index, std::size_t ambient_dim,
    const std::vector<std::vector<Poly>>& chain_polys, const std::vector<Rat>& initial_values) {
    if (tag.rfind("exp:", 0) == 0) {
        return std::make_shared<ExpEvaluator>(std::stoul(tag.substr(4)));
    }
    if (tag.rfind("ode:", 0) == 0) {
        std::size_t axis = std::stoul(tag.substr(4));
        std::size_t r = chain_polys.size();
        if (r > 2) throw std::invalid_argument("ode evaluator: chain length > 2 unsupported");
        // Restrict each derivation along the axis to (t, u...) slots.
        std::vector<Poly> rhs;
        for (std::size_t i = 0; i < r; ++i) {
            const Poly& p = chain_polys[i][axis];
            for (std::size_t j = 0; j < ambient_dim; ++j)
                if (j != axis && p.uses_slot(j))
                    throw std::invalid_argument("ode evaluator: derivation uses several box variables");
            std::vector<std::size_t> map(ambient_dim + r, 0);
            for (std::size_t j = 0; j < ambient_dim + r; ++j) {
                if (j == axis) map[j] = 0;
                else if (j >= ambient_dim) map[j] = 1 + (j - ambient_dim);
                else map[j] = 0;  // unused slots may map anywhere
            }
            rhs.push_back(p.remap(map, 1 + r));
        }
        return std::make_shared<SeriesODEEvaluator>(axis, chain_index, rhs, initial_values);
    }
    throw std::invalid_argument("unknown chain evaluator tag: " + tag);
}

}  // namespace pfcell

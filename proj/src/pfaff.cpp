#include "pfcell/pfaff.hpp"

namespace pfcell {

PfaffPoly::PfaffPoly(ChainPtr chain, std::size_t space_dim, Poly poly)
    : chain_(std::move(chain)), space_dim_(space_dim), poly_(std::move(poly)) {
    if (!chain_) throw std::invalid_argument("PfaffPoly: null chain");
    if (poly_.nvars() != space_dim_ + chain_->length())
        throw std::invalid_argument("PfaffPoly: slot count mismatch");
    if (uses_chain() && space_dim_ < chain_->ambient_dim())
        throw std::invalid_argument("PfaffPoly: chain symbols need the chain's box variables");
    degree_ = poly_.total_degree();
}

PfaffPoly PfaffPoly::zero(ChainPtr chain, std::size_t space_dim) {
    std::size_t n = space_dim + chain->length();
    return PfaffPoly(std::move(chain), space_dim, Poly(n));
}

PfaffPoly PfaffPoly::constant(ChainPtr chain, std::size_t space_dim, const Rat& c) {
    std::size_t n = space_dim + chain->length();
    return PfaffPoly(std::move(chain), space_dim, Poly::constant(n, c));
}

PfaffPoly PfaffPoly::box_var(ChainPtr chain, std::size_t space_dim, std::size_t axis) {
    if (axis >= space_dim) throw std::out_of_range("box_var: axis out of range");
    std::size_t n = space_dim + chain->length();
    return PfaffPoly(std::move(chain), space_dim, Poly::variable(n, axis));
}

PfaffPoly PfaffPoly::chain_symbol(ChainPtr chain, std::size_t space_dim, std::size_t index) {
    if (index >= chain->length()) throw std::out_of_range("chain_symbol: index out of range");
    std::size_t n = space_dim + chain->length();
    return PfaffPoly(std::move(chain), space_dim, Poly::variable(n, space_dim + index));
}

bool PfaffPoly::uses_chain() const {
    for (std::size_t i = 0; i < chain_->length(); ++i)
        if (poly_.uses_slot(space_dim_ + i)) return true;
    return false;
}

PfaffPoly PfaffPoly::operator+(const PfaffPoly& o) const {
    if (chain_ != o.chain_ || space_dim_ != o.space_dim_)
        throw std::invalid_argument("PfaffPoly +: space mismatch");
    return PfaffPoly(chain_, space_dim_, poly_ + o.poly_);
}

PfaffPoly PfaffPoly::operator-(const PfaffPoly& o) const {
    if (chain_ != o.chain_ || space_dim_ != o.space_dim_)
        throw std::invalid_argument("PfaffPoly -: space mismatch");
    return PfaffPoly(chain_, space_dim_, poly_ - o.poly_);
}

PfaffPoly PfaffPoly::operator*(const PfaffPoly& o) const {
    if (chain_ != o.chain_ || space_dim_ != o.space_dim_)
        throw std::invalid_argument("PfaffPoly *: space mismatch");
    return PfaffPoly(chain_, space_dim_, poly_ * o.poly_);
}

PfaffPoly PfaffPoly::operator-() const { return PfaffPoly(chain_, space_dim_, -poly_); }

PfaffPoly PfaffPoly::scaled(const Rat& c) const {
    return PfaffPoly(chain_, space_dim_, poly_.scaled(c));
}

bool PfaffPoly::operator==(const PfaffPoly& o) const {
    return chain_ == o.chain_ && space_dim_ == o.space_dim_ && poly_ == o.poly_;
}

PfaffPoly PfaffPoly::derive(std::size_t axis) const {
    if (axis >= space_dim_) throw std::out_of_range("derive: axis out of range");
    std::size_t r = chain_->length();
    Poly acc = poly_.derivative(axis);
    for (std::size_t i = 0; i < r; ++i) {
        Poly pu = poly_.derivative(space_dim_ + i);
        if (pu.is_zero()) continue;
        if (axis >= chain_->ambient_dim()) continue;  // chain symbols constant in padded axes
        // Remap the chain derivation P[i][axis] (over ambient+r slots) into
        // this space (over space_dim_+r slots).
        const Poly& der = chain_->derivation(i, axis);
        std::size_t k = chain_->ambient_dim();
        std::vector<std::size_t> map(k + r);
        for (std::size_t j = 0; j < k; ++j) map[j] = j;
        for (std::size_t j = 0; j < r; ++j) map[k + j] = space_dim_ + j;
        acc = acc + pu * der.remap(map, space_dim_ + r);
    }
    return PfaffPoly(chain_, space_dim_, acc);
}

Interval PfaffPoly::eval_interval(const std::vector<Rat>& point, const Rat& precision,
                                  const PrecisionPolicy& policy, bool* capped) const {
    if (point.size() != space_dim_)
        throw std::invalid_argument("eval_interval: point arity mismatch");
    for (std::size_t i = 0; i < space_dim_; ++i) {
        bool in_chain_domain = i >= chain_->ambient_dim() ||
                               chain_->domain()[i].contains(point[i]);
        if (!in_chain_domain) throw std::domain_error("eval_interval: point outside domain");
    }
    if (capped) *capped = false;
    if (!uses_chain()) {
        std::vector<Rat> full = point;
        full.resize(space_dim_ + chain_->length(), Rat(0));
        return Interval(poly_.eval(full));
    }
    Rat w = rat_min(precision, policy.start_width);
    Interval best(Rat(-1000000), Rat(1000000));
    for (int esc = 0; esc <= policy.max_escalations; ++esc) {
        auto us = chain_->eval_symbols(point, w);
        Box box;
        box.reserve(space_dim_ + chain_->length());
        for (const auto& x : point) box.emplace_back(x);
        for (auto& uiv : us) box.push_back(uiv);
        Interval got = poly_.eval_box(box);
        if (got.width() < best.width()) best = got;
        if (best.width() <= precision) return best;
        w /= 16;
    }
    if (capped) *capped = true;
    return best;
}

Rat PfaffPoly::eval_exact(const std::vector<Rat>& point) const {
    if (uses_chain()) throw std::domain_error("eval_exact: chain symbols present");
    if (point.size() != space_dim_)
        throw std::invalid_argument("eval_exact: point arity mismatch");
    std::vector<Rat> full = point;
    full.resize(space_dim_ + chain_->length(), Rat(0));
    return poly_.eval(full);
}

Interval PfaffPoly::eval_box(const Box& box, const Rat& u_width) const {
    if (box.size() != space_dim_) throw std::invalid_argument("eval_box: arity mismatch");
    Box full = box;
    if (chain_->length() > 0 && uses_chain()) {
        // Enclose each chain symbol over the box through corner evaluation
        // plus a mean-value style widening along each axis.
        // Conservative: evaluate at the midpoint and widen by the derivation
        // range times the box radius, iterated to a fixed point bound.
        std::vector<Rat> mid(space_dim_);
        for (std::size_t i = 0; i < space_dim_; ++i) mid[i] = box[i].mid();
        auto us = chain_->eval_symbols(mid, u_width);
        std::size_t r = chain_->length();
        std::size_t k = chain_->ambient_dim();
        // widen: |u_i(x) - u_i(mid)| <= sum_j sup|P_i_j| * radius_j over an
        // inflated candidate; iterate inflation until stable.
        for (int round = 0; round < 8; ++round) {
            Box args;
            for (std::size_t j = 0; j < space_dim_; ++j) args.push_back(box[j]);
            for (std::size_t j = 0; j < r; ++j) args.push_back(us[j]);
            bool stable = true;
            std::vector<Interval> next = us;
            for (std::size_t i = 0; i < r; ++i) {
                Interval spread(Rat(0));
                for (std::size_t j = 0; j < k && j < space_dim_; ++j) {
                    std::vector<std::size_t> map(k + r);
                    for (std::size_t t = 0; t < k; ++t) map[t] = t;
                    for (std::size_t t = 0; t < r; ++t) map[k + t] = space_dim_ + t;
                    Interval dj = chain_->derivation(i, j).remap(map, space_dim_ + r).eval_box(args);
                    Rat radius = box[j].width() / 2;
                    Rat mag = rat_max(rat_abs(dj.lo), rat_abs(dj.hi)) * radius;
                    spread = spread + Interval(-mag, mag);
                }
                Interval cand = Interval(us[i].lo + spread.lo, us[i].hi + spread.hi);
                if (!us[i].contains(cand)) {
                    stable = false;
                    next[i] = ihull(us[i], cand);
                }
            }
            us = next;
            if (stable) break;
        }
        for (const auto& uiv : us) full.push_back(uiv);
    } else {
        for (std::size_t i = 0; i < chain_->length(); ++i) full.push_back(Interval(Rat(0)));
    }
    return poly_.eval_box(full);
}

Sign PfaffPoly::sign_at(const std::vector<Rat>& point, const PrecisionPolicy& policy) const {
    if (!uses_chain()) {
        Rat v = eval_exact(point);
        if (v == 0) return Sign::Zero;
        return v > 0 ? Sign::Positive : Sign::Negative;
    }
    Rat w = policy.start_width;
    for (int esc = 0; esc <= policy.max_escalations; ++esc) {
        Interval got = eval_interval(point, w, policy);
        if (got.lo > 0) return Sign::Positive;
        if (got.hi < 0) return Sign::Negative;
        w /= 16;
    }
    return Sign::Unresolved;
}

PfaffPoly PfaffPoly::with_space_dim(std::size_t new_dim) const {
    std::size_t r = chain_->length();
    if (new_dim == space_dim_) return *this;
    std::vector<std::size_t> map(space_dim_ + r);
    for (std::size_t j = 0; j < space_dim_; ++j) {
        if (j >= new_dim && poly_.uses_slot(j))
            throw std::invalid_argument("with_space_dim: dropped variable is used");
        map[j] = j < new_dim ? j : 0;
    }
    for (std::size_t j = 0; j < r; ++j) map[space_dim_ + j] = new_dim + j;
    return PfaffPoly(chain_, new_dim, poly_.remap(map, new_dim + r));
}

std::string PfaffPoly::str() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < space_dim_; ++i) names.push_back("x" + std::to_string(i + 1));
    for (std::size_t i = 0; i < chain_->length(); ++i) names.push_back("u" + std::to_string(i + 1));
    return poly_.str(names);
}

}  // namespace pfcell

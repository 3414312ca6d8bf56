#include "pfcell/poly.hpp"

#include <algorithm>
#include <sstream>

namespace pfcell {

Poly Poly::constant(std::size_t nvars, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.emplace(Mono(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t slot) {
    if (slot >= nvars) throw std::out_of_range("Poly::variable: bad slot");
    Poly p(nvars);
    Mono m(nvars, 0);
    m[slot] = 1;
    p.terms_.emplace(std::move(m), Rat(1));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0;
}

std::optional<Rat> Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (is_constant()) return terms_.begin()->second;
    return std::nullopt;
}

unsigned Poly::total_degree() const {
    if (terms_.empty()) return 0;
    // grlex: last term has maximal degree
    return mono_degree(terms_.rbegin()->first);
}

unsigned Poly::degree_in(std::size_t slot) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, (unsigned)m[slot]);
    return d;
}

bool Poly::uses_slot(std::size_t slot) const {
    for (const auto& [m, c] : terms_)
        if (m[slot] > 0) return true;
    return false;
}

void Poly::add_term(const Mono& m, const Rat& c) {
    if (m.size() != nvars_) throw std::invalid_argument("add_term: arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("poly +: arity mismatch");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("poly -: arity mismatch");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("poly *: arity mismatch");
    Poly r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Mono m(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rat& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, c * k);
    return r;
}

Poly operator*(const Rat& c, const Poly& p) { return p.scaled(c); }

Poly Poly::derivative(std::size_t slot) const {
    if (slot >= nvars_) throw std::out_of_range("derivative: bad slot");
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[slot] == 0) continue;
        Mono d = m;
        d[slot] -= 1;
        r.add_term(d, c * Rat((long)m[slot]));
    }
    return r;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("eval: arity mismatch");
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (m[i]) t *= rat_pow(point[i], m[i]);
        acc += t;
    }
    return acc;
}

Interval Poly::eval_box(const Box& box) const {
    if (box.size() != nvars_) throw std::invalid_argument("eval_box: arity mismatch");
    Interval acc{Rat(0)};
    for (const auto& [m, c] : terms_) {
        Interval t{c};
        for (std::size_t i = 0; i < nvars_; ++i)
            if (m[i]) t = t * ipow(box[i], m[i]);
        acc = acc + t;
    }
    return acc;
}

Poly Poly::substitute(const std::vector<std::optional<Rat>>& values) const {
    if (values.size() != nvars_) throw std::invalid_argument("substitute: arity mismatch");
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        Rat k = c;
        Mono mm = m;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (values[i] && m[i]) {
                k *= rat_pow(*values[i], m[i]);
                mm[i] = 0;
            }
        }
        r.add_term(mm, k);
    }
    return r;
}

Poly Poly::identify_slots(std::size_t from, std::size_t to) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        Mono mm = m;
        mm[to] += mm[from];
        mm[from] = 0;
        r.add_term(mm, c);
    }
    return r;
}

Poly Poly::remap(const std::vector<std::size_t>& slot_map, std::size_t new_nvars) const {
    if (slot_map.size() != nvars_) throw std::invalid_argument("remap: arity mismatch");
    Poly r(new_nvars);
    for (const auto& [m, c] : terms_) {
        Mono mm(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (slot_map[i] >= new_nvars) throw std::out_of_range("remap: bad target slot");
            mm[slot_map[i]] += m[i];
        }
        r.add_term(mm, c);
    }
    return r;
}

std::vector<Poly> Poly::coeffs_in(std::size_t slot) const {
    unsigned d = degree_in(slot);
    std::vector<Poly> cs(d + 1, Poly(nvars_));
    for (const auto& [m, c] : terms_) {
        Mono mm = m;
        unsigned e = mm[slot];
        mm[slot] = 0;
        cs[e].add_term(mm, c);
    }
    return cs;
}

Poly Poly::leading_coeff_in(std::size_t slot) const {
    auto cs = coeffs_in(slot);
    return cs.back();
}

std::vector<Rat> Poly::univariate_in(std::size_t slot) const {
    std::vector<Rat> cs(degree_in(slot) + 1, Rat(0));
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = 0; i < nvars_; ++i)
            if (i != slot && m[i] > 0)
                throw std::domain_error("univariate_in: polynomial is not univariate");
        cs[m[slot]] += c;
    }
    while (cs.size() > 1 && cs.back() == 0) cs.pop_back();
    return cs;
}

Poly Poly::primitive_part() const {
    if (terms_.empty()) return *this;
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat factor(num_gcd, den_lcm);
    factor.canonicalize();
    if (factor == 0) return *this;
    // Normalize the sign to the grlex-leading coefficient.
    if (terms_.rbegin()->second < 0) factor = -factor;
    return scaled(Rat(1) / factor);
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat a = rat_abs(c);
        bool printed = false;
        if (a != 1 || mono_degree(m) == 0) {
            os << rat_str(a);
            printed = true;
        }
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (printed) os << "*";
            if (i < names.size()) os << names[i];
            else os << "v" << i;
            if (m[i] > 1) os << "^" << m[i];
            printed = true;
        }
    }
    return os.str();
}

Poly from_coeffs_in(std::size_t slot, const std::vector<Poly>& coeffs, std::size_t nvars) {
    Poly r(nvars);
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        for (const auto& [m, c] : coeffs[e].terms()) {
            Mono mm = m;
            mm[slot] += (std::uint32_t)e;
            r.add_term(mm, c);
        }
    }
    return r;
}

Poly divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
    Poly rem = a;
    Poly quot(a.nvars());
    const auto& bl = *b.terms().rbegin();  // grlex-leading term of b
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms().rbegin();
        Mono q(rem.nvars());
        for (std::size_t i = 0; i < rem.nvars(); ++i) {
            if (rl.first[i] < bl.first[i]) throw std::domain_error("divide_exact: not divisible");
            q[i] = rl.first[i] - bl.first[i];
        }
        Rat qc = rl.second / bl.second;
        Poly qt(rem.nvars());
        qt.add_term(q, qc);
        quot = quot + qt;
        rem = rem - qt * b;
    }
    return quot;
}

namespace {

// lc(b)^(deg a - deg b + 1) * a mod b, all in `slot`; degrees strictly drop.
Poly pseudo_rem(const Poly& a, const Poly& b, std::size_t slot) {
    unsigned db = b.degree_in(slot);
    Poly lcb = b.leading_coeff_in(slot);
    Poly r = a;
    unsigned da = r.degree_in(slot);
    if (da < db) return r;
    unsigned steps = da - db + 1;
    for (unsigned s = 0; s < steps && !r.is_zero(); ++s) {
        unsigned dr = r.degree_in(slot);
        if (dr < db) {
            // Pad remaining multiplications to keep the pseudo-remainder
            // identity exact.
            for (unsigned t = s; t < steps; ++t) r = r * lcb;
            return r;
        }
        Poly lcr = r.leading_coeff_in(slot);
        Poly shift(r.nvars());
        Mono m(r.nvars(), 0);
        m[slot] = dr - db;
        shift.add_term(m, Rat(1));
        r = lcb * r - lcr * shift * b;
    }
    return r;
}

}  // namespace

Poly resultant(const Poly& a, const Poly& b, std::size_t slot,
               std::vector<Poly>* dropped_factors) {
    auto note = [&](const Poly& lc) {
        if (dropped_factors && !lc.is_constant()) dropped_factors->push_back(lc.primitive_part());
    };
    if (a.is_zero() || b.is_zero()) return Poly(a.nvars());
    Poly A = a.primitive_part(), B = b.primitive_part();
    unsigned da = A.degree_in(slot), db = B.degree_in(slot);
    if (da == 0 && db == 0) return Poly::constant(a.nvars(), Rat(1));
    if (da < db) {
        std::swap(A, B);
        std::swap(da, db);
    }
    if (db == 0) {
        // res(A, c) = c^deg(A)
        return B.primitive_part();
    }
    note(A.leading_coeff_in(slot));
    note(B.leading_coeff_in(slot));
    // Subresultant PRS following Brown. The chain's degree-0 tail equals the
    // resultant up to factors of the leading coefficients divided out along
    // the way; callers doing projection need those, hence dropped_factors.
    Poly g = Poly::constant(a.nvars(), Rat(1));
    Poly h = Poly::constant(a.nvars(), Rat(1));
    while (true) {
        if (B.degree_in(slot) == 0) return B.primitive_part();
        unsigned d = A.degree_in(slot) - B.degree_in(slot);
        Poly R = pseudo_rem(A, B, slot);
        if (R.is_zero()) return Poly(a.nvars());
        Poly denom = g;
        for (unsigned i = 0; i < d; ++i) denom = denom * h;
        A = B;
        B = divide_exact(R, denom).primitive_part();
        g = A.leading_coeff_in(slot);
        note(g);
        if (d > 0) {
            Poly gd = Poly::constant(a.nvars(), Rat(1));
            for (unsigned i = 0; i < d; ++i) gd = gd * g;
            Poly hd = Poly::constant(a.nvars(), Rat(1));
            for (unsigned i = 0; i + 1 < d; ++i) hd = hd * h;
            h = d == 1 ? gd : divide_exact(gd, hd);
        }
    }
}

}  // namespace pfcell

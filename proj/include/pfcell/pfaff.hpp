#ifndef PFCELL_PFAFF_HPP
#define PFCELL_PFAFF_HPP

#include "pfcell/chain.hpp"

namespace pfcell {

enum class Sign { Negative, Zero, Positive, Unresolved };

inline int sign_value(Sign s) {
    switch (s) {
        case Sign::Negative: return -1;
        case Sign::Zero: return 0;
        case Sign::Positive: return 1;
        default: throw std::logic_error("sign_value: unresolved");
    }
}

// Escalation policy for certified evaluation: start at start_width and halve
// (squaring the bit budget) up to max_escalations times.
struct PrecisionPolicy {
    Rat start_width = Rat(1, 1 << 20);
    int max_escalations = 16;
};

// Polynomial in `space_dim` box variables and the chain symbols of the
// session chain. Slot layout of the underlying Poly:
// [x_0 .. x_{space_dim-1}, u_0 .. u_{r-1}].
class PfaffPoly {
  public:
    PfaffPoly(ChainPtr chain, std::size_t space_dim, Poly poly);

    static PfaffPoly zero(ChainPtr chain, std::size_t space_dim);
    static PfaffPoly constant(ChainPtr chain, std::size_t space_dim, const Rat& c);
    static PfaffPoly box_var(ChainPtr chain, std::size_t space_dim, std::size_t axis);
    static PfaffPoly chain_symbol(ChainPtr chain, std::size_t space_dim, std::size_t index);

    const ChainPtr& chain() const { return chain_; }
    std::size_t space_dim() const { return space_dim_; }
    const Poly& poly() const { return poly_; }
    // Total degree in box variables and chain symbols jointly; 0 for the
    // zero polynomial and constants.
    unsigned degree() const { return degree_; }
    bool uses_chain() const;
    bool is_zero() const { return poly_.is_zero(); }

    PfaffPoly operator+(const PfaffPoly& o) const;
    PfaffPoly operator-(const PfaffPoly& o) const;
    PfaffPoly operator*(const PfaffPoly& o) const;
    PfaffPoly operator-() const;
    PfaffPoly scaled(const Rat& c) const;
    bool operator==(const PfaffPoly& o) const;

    // Total derivative along a box axis through the chain relations.
    PfaffPoly derive(std::size_t axis) const;

    // Enclosure of the value at a rational point of the domain, of width at
    // most `precision` unless the escalation cap is hit (then the tightest
    // achieved enclosure is returned and *capped is set when provided).
    Interval eval_interval(const std::vector<Rat>& point, const Rat& precision,
                           const PrecisionPolicy& policy = {}, bool* capped = nullptr) const;

    // Exact value; requires a chain-free polynomial.
    Rat eval_exact(const std::vector<Rat>& point) const;

    // Interval enclosure over a box of the poly's space.
    Interval eval_box(const Box& box, const Rat& u_width = Rat(1, 1 << 20)) const;

    Sign sign_at(const std::vector<Rat>& point, const PrecisionPolicy& policy = {}) const;

    // Same-space arity with a different space dimension (appending or
    // dropping unused trailing variables).
    PfaffPoly with_space_dim(std::size_t new_dim) const;

    std::string str() const;

  private:
    ChainPtr chain_;
    std::size_t space_dim_;
    Poly poly_;
    unsigned degree_;
};

}  // namespace pfcell

#endif

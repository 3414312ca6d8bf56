#ifndef PFCELL_POLY_HPP
#define PFCELL_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfcell/interval.hpp"
#include "pfcell/rational.hpp"

namespace pfcell {

// Exponent vector over a fixed number of variable slots.
using Mono = std::vector<std::uint32_t>;

inline unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

// Graded-lexicographic order: total degree first, then lex. Keeping the term
// map in this order makes equality syntactic.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

// Sparse multivariate polynomial with exact rational coefficients over a
// fixed slot count. Slot semantics (box variable vs chain symbol) live in
// the callers; this class is plain commutative algebra.
class Poly {
  public:
    Poly() : nvars_(0) {}
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rat& c);
    static Poly variable(std::size_t nvars, std::size_t slot);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Value when constant (including zero); nullopt otherwise.
    std::optional<Rat> constant_value() const;

    // Total degree over all slots jointly; 0 for the zero polynomial.
    unsigned total_degree() const;
    unsigned degree_in(std::size_t slot) const;
    bool uses_slot(std::size_t slot) const;

    const std::map<Mono, Rat, GrlexLess>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Mono& m, const Rat& c);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rat& c) const;
    bool operator==(const Poly& o) const = default;

    Poly derivative(std::size_t slot) const;

    // Exact evaluation at a full rational point.
    Rat eval(const std::vector<Rat>& point) const;
    // Interval enclosure over a box (one interval per slot).
    Interval eval_box(const Box& box) const;

    // Substitutes values[i] for each slot with values[i] set; the result
    // keeps the same slot count with those slots unused.
    Poly substitute(const std::vector<std::optional<Rat>>& values) const;

    // Moves every occurrence of slot `from` onto slot `to` (variable
    // identification, used for fiber products).
    Poly identify_slots(std::size_t from, std::size_t to) const;

    // Reinterprets over new_nvars slots sending old slot i to slot_map[i].
    Poly remap(const std::vector<std::size_t>& slot_map, std::size_t new_nvars) const;

    // Dense coefficient list in `slot`: result[i] is the coefficient
    // polynomial of slot^i (with slot's exponent cleared).
    std::vector<Poly> coeffs_in(std::size_t slot) const;
    Poly leading_coeff_in(std::size_t slot) const;

    // Dense univariate coefficients when no slot other than `slot` occurs.
    // Throws if another slot is used.
    std::vector<Rat> univariate_in(std::size_t slot) const;

    // Exact content: gcd of coefficient numerators / lcm of denominators is
    // not needed for correctness; this strips a common rational factor to
    // keep subresultant chains small. Returns the primitive part; the zero
    // polynomial is returned unchanged.
    Poly primitive_part() const;

    std::string str(const std::vector<std::string>& names = {}) const;

  private:
    std::size_t nvars_;
    std::map<Mono, Rat, GrlexLess> terms_;
};

Poly operator*(const Rat& c, const Poly& p);

// p viewed in ascending powers of `slot` rebuilt from coefficient polys.
Poly from_coeffs_in(std::size_t slot, const std::vector<Poly>& coeffs, std::size_t nvars);

// Exact division: returns q with a == q * b. Throws std::domain_error when b
// does not divide a (used only on divisions known exact).
Poly divide_exact(const Poly& a, const Poly& b);

// Resultant of a and b with respect to `slot` (up to a nonzero rational),
// computed by the subresultant pseudo-remainder sequence. Zero iff a and b
// share a factor involving slot (or one is zero). Common zeros of (a, b)
// project into the zero locus of the result UNION the zero loci of the
// leading coefficients divided out along the chain; pass dropped_factors to
// collect those when doing sound projection.
Poly resultant(const Poly& a, const Poly& b, std::size_t slot,
               std::vector<Poly>* dropped_factors = nullptr);

}  // namespace pfcell

#endif

#ifndef PFCELL_UNIVARIATE_HPP
#define PFCELL_UNIVARIATE_HPP

#include <vector>

#include "pfcell/interval.hpp"
#include "pfcell/rational.hpp"

namespace pfcell {

// Dense univariate polynomial over the rationals, ascending coefficients.
// The zero polynomial is the empty vector.
struct UPoly {
    std::vector<Rat> c;

    UPoly() = default;
    explicit UPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    static UPoly constant(const Rat& k);
    static UPoly from_roots(const std::vector<Rat>& roots);  // monic product of (x - r)

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }  // -1 for zero
    Rat lead() const { return c.back(); }

    Rat eval(const Rat& x) const;
    Interval eval_box(const Interval& x) const;
    UPoly derivative() const;
    UPoly monic() const;

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    bool operator==(const UPoly& o) const = default;
};

// Remainder of a mod b (b nonzero).
UPoly urem(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0,0) = 0.
UPoly ugcd(const UPoly& a, const UPoly& b);
// p / gcd(p, p'): same roots, all simple.
UPoly squarefree_part(const UPoly& p);

// A root of `witness` isolated by (lo, hi): witness is squarefree and
// nonzero, witness(lo) != 0 != witness(hi), and exactly one root lies in the
// open interval. Rational roots are stored exactly with lo == hi.
struct IsolatedRoot {
    UPoly witness;
    Rat lo, hi;

    bool is_exact() const { return lo == hi; }
    Rat value_if_exact() const { return lo; }
    Interval enclosure() const { return Interval(lo, hi); }
    // Halves the enclosure width (no-op when exact).
    void refine();
    void refine_below(const Rat& width);
};

// Number of distinct real roots of squarefree p in (a, b].
int sturm_count(const std::vector<UPoly>& chain, const Rat& a, const Rat& b);
std::vector<UPoly> sturm_chain(const UPoly& squarefree);

// All distinct real roots of p in [lo, hi], ascending, exact rationals
// recognized. p may have multiple roots (squarefree part is taken).
std::vector<IsolatedRoot> isolate_roots(const UPoly& p, const Rat& lo, const Rat& hi);

// Exact comparison of isolated algebraic numbers (and against rationals).
// Total order; equal numbers are detected via gcd of witnesses.
int compare_roots(const IsolatedRoot& a, const IsolatedRoot& b);
int compare_root_rat(const IsolatedRoot& a, const Rat& r);

}  // namespace pfcell

#endif

#ifndef PFCELL_INTERVAL_HPP
#define PFCELL_INTERVAL_HPP

#include <vector>

#include "pfcell/rational.hpp"

namespace pfcell {

// Closed interval with exact rational endpoints. All operations return
// enclosures; with rational inputs the arithmetic itself introduces no
// rounding, so widths only come from input widths.
struct Interval {
    Rat lo;
    Rat hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rat both) : lo(both), hi(both) {}
    Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("interval: lo > hi");
    }

    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_interior(const Interval& o) const { return lo < o.lo && o.hi < hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

    // Sign certified from the enclosure: +1, -1, or 0 when the interval
    // straddles or touches zero (not a certificate of a zero value).
    int sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        return 0;
    }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rat& c, const Interval& a);
Interval ipow(const Interval& a, unsigned e);
Interval ihull(const Interval& a, const Interval& b);
// Intersection; throws if disjoint.
Interval imeet(const Interval& a, const Interval& b);

using Box = std::vector<Interval>;

inline Box box_of_point(const std::vector<Rat>& p) {
    Box b;
    b.reserve(p.size());
    for (const auto& x : p) b.emplace_back(x);
    return b;
}

// [0,1]^n
Box unit_box(std::size_t n);

Rat box_max_width(const Box& b);

}  // namespace pfcell

#endif

#include "pfcell/interval.hpp"

#include <algorithm>

namespace pfcell {

Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}

Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_point() && b.is_point()) return Interval(a.lo * b.lo);
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rat lo = rat_min(rat_min(p1, p2), rat_min(p3, p4));
    Rat hi = rat_max(rat_max(p1, p2), rat_max(p3, p4));
    return Interval(lo, hi);
}

Interval operator*(const Rat& c, const Interval& a) {
    if (c >= 0) return Interval(c * a.lo, c * a.hi);
    return Interval(c * a.hi, c * a.lo);
}

Interval ipow(const Interval& a, unsigned e) {
    if (e == 0) return Interval(Rat(1));
    if (e == 1) return a;
    if (a.is_point()) return Interval(rat_pow(a.lo, e));
    // Even powers need the sign split to stay tight.
    if (e % 2 == 0) {
        Rat plo = rat_pow(a.lo, e), phi = rat_pow(a.hi, e);
        if (a.lo >= 0) return Interval(plo, phi);
        if (a.hi <= 0) return Interval(phi, plo);
        return Interval(Rat(0), rat_max(plo, phi));
    }
    return Interval(rat_pow(a.lo, e), rat_pow(a.hi, e));
}

Interval ihull(const Interval& a, const Interval& b) {
    return Interval(rat_min(a.lo, b.lo), rat_max(a.hi, b.hi));
}

Interval imeet(const Interval& a, const Interval& b) {
    Rat lo = rat_max(a.lo, b.lo), hi = rat_min(a.hi, b.hi);
    if (lo > hi) throw std::invalid_argument("imeet: disjoint intervals");
    return Interval(lo, hi);
}

Box unit_box(std::size_t n) {
    return Box(n, Interval(Rat(0), Rat(1)));
}

Rat box_max_width(const Box& b) {
    Rat w(0);
    for (const auto& iv : b) w = rat_max(w, iv.width());
    return w;
}

}  // namespace pfcell

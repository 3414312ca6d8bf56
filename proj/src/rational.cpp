#include "pfcell/rational.hpp"

namespace pfcell {

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_pow(const Rat& base, unsigned e) {
    Rat acc = 1;
    Rat b = base;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

Rat dyadic_between(const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) throw std::invalid_argument("dyadic_between: empty interval");
    mpz_class scale = 1;
    for (int bits = 0; bits <= 8192; ++bits) {
        // Smallest m with m/scale > lo; candidate is in (lo, lo + 1/scale].
        Rat target = lo * Rat(scale);
        mpz_class m;
        mpz_fdiv_q(m.get_mpz_t(), target.get_num_mpz_t(), target.get_den_mpz_t());
        m += 1;
        Rat cand(m, scale);
        cand.canonicalize();
        if (cand > lo && cand < hi) return cand;
        scale *= 2;
    }
    throw std::runtime_error("dyadic_between: precision exhausted");
}

namespace {
// Simplest rational in [lo, hi] for 0 < lo <= hi, by continued fractions.
Rat simplest_pos(const Rat& lo, const Rat& hi) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    Rat a(fl);
    if (a == lo) return lo;               // lo itself is an integer
    if (a + 1 <= hi) return Rat(a + 1);   // an integer lies inside
    Rat sub = simplest_pos(Rat(1) / (hi - a), Rat(1) / (lo - a));
    return a + Rat(1) / sub;
}
}  // namespace

Rat simplest_in(const Rat& lo, const Rat& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_in: empty interval");
    if (lo <= 0 && hi >= 0) return Rat(0);
    if (hi < 0) return -simplest_pos(-hi, -lo);
    return simplest_pos(lo, hi);
}

}  // namespace pfcell

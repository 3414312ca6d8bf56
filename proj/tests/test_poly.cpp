#include <random>

#include "doctest.h"
#include "pfcell/poly.hpp"
#include "pfcell/univariate.hpp"
#include "test_util.hpp"

using pfcell::rat;

using namespace pfcell;
using pfcell_test::rand_poly;
using pfcell_test::rand_rat;

TEST_CASE("grlex canonical arithmetic round trips") {
    std::mt19937 rng(1);
    for (int t = 0; t < 50; ++t) {
        Poly a = rand_poly(rng, 3, 5, 6);
        Poly b = rand_poly(rng, 3, 5, 6);
        CHECK(a + b - b == a);
        CHECK((a * b).total_degree() <= a.total_degree() + b.total_degree());
        if (!b.is_zero()) CHECK(divide_exact(a * b, b) == a);
    }
}

TEST_CASE("substitution and evaluation agree") {
    std::mt19937 rng(2);
    for (int t = 0; t < 30; ++t) {
        Poly a = rand_poly(rng, 3, 4, 5);
        std::vector<Rat> pt{rand_rat(rng), rand_rat(rng), rand_rat(rng)};
        std::vector<std::optional<Rat>> sub{pt[0], pt[1], pt[2]};
        auto c = a.substitute(sub).constant_value();
        REQUIRE(c.has_value());
        CHECK(*c == a.eval(pt));
    }
}

TEST_CASE("interval evaluation encloses point values") {
    std::mt19937 rng(3);
    for (int t = 0; t < 30; ++t) {
        Poly a = rand_poly(rng, 2, 5, 6);
        Box box{Interval(Rat(1, 4), Rat(1, 2)), Interval(Rat(0), Rat(1, 3))};
        Interval enc = a.eval_box(box);
        for (int s = 0; s < 5; ++s) {
            Rat x = box[0].lo + Rat((long)(rng() % 5), 16);
            Rat y = box[1].lo + Rat((long)(rng() % 5), 16);
            if (!box[0].contains(x) || !box[1].contains(y)) continue;
            CHECK(enc.contains(a.eval({x, y})));
        }
    }
}

TEST_CASE("resultant eliminates a common root") {
    // f = x^2 + y^2 - 1, g = x - y: common zeros have x = y = ±1/sqrt(2);
    // res_y(f,g) = 2x^2 - 1 up to scalars.
    Poly f(2), g(2);
    f.add_term({2, 0}, Rat(1));
    f.add_term({0, 2}, Rat(1));
    f.add_term({0, 0}, Rat(-1));
    g.add_term({1, 0}, Rat(1));
    g.add_term({0, 1}, Rat(-1));
    Poly r = resultant(f, g, 1);
    REQUIRE(!r.is_zero());
    CHECK(!r.uses_slot(1));
    UPoly u(r.univariate_in(0));
    // vanishes exactly at ±1/sqrt(2): u(x) | (2x^2-1)^k; check both signs
    CHECK(u.eval(Rat(0)) != 0);
    auto roots = isolate_roots(u, Rat(-2), Rat(2));
    REQUIRE(roots.size() == 2);
    UPoly target({std::vector<Rat>{Rat(-1), Rat(0), Rat(2)}});  // 2x^2 - 1
    for (auto& rt : roots) {
        rt.refine_below(Rat(1, 1 << 20));
        Interval e = rt.enclosure();
        Interval val = target.eval_box(e);
        CHECK(val.contains_zero());
    }
}

TEST_CASE("resultant detects shared factors") {
    Poly f(2), g(2);
    // f = (y - x) * (y + 1), g = (y - x) * (y - 2)
    Poly ymx(2), yp1(2), ym2(2);
    ymx.add_term({0, 1}, Rat(1));
    ymx.add_term({1, 0}, Rat(-1));
    yp1.add_term({0, 1}, Rat(1));
    yp1.add_term({0, 0}, Rat(1));
    ym2.add_term({0, 1}, Rat(1));
    ym2.add_term({0, 0}, Rat(-2));
    f = ymx * yp1;
    g = ymx * ym2;
    CHECK(resultant(f, g, 1).is_zero());
}

TEST_CASE("resultant on random polynomials vanishes on projections") {
    std::mt19937 rng(4);
    for (int t = 0; t < 10; ++t) {
        Poly f = rand_poly(rng, 2, 3, 4);
        Poly g = rand_poly(rng, 2, 3, 4);
        if (f.degree_in(1) == 0 || g.degree_in(1) == 0) continue;
        std::vector<Poly> dropped;
        Poly r = resultant(f, g, 1, &dropped);
        // check the ideal-membership property numerically at a few points on
        // the locus of f with g forced: skip (hard without a solver); instead
        // verify degree sanity and that specialization commutes generically.
        Rat x0 = rand_rat(rng, 5, 7);
        std::vector<std::optional<Rat>> sub{x0, std::nullopt};
        Poly fs = f.substitute(sub), gs = g.substitute(sub);
        if (fs.degree_in(1) == f.degree_in(1) && gs.degree_in(1) == g.degree_in(1) &&
            !r.is_zero()) {
            Poly rs = resultant(fs, gs, 1);
            Poly rsub = r.substitute(sub);
            // both vanish together (they agree up to a nonzero scalar)
            bool rs_zero = rs.is_zero() || rs.constant_value() == Rat(0);
            bool rsub_zero = rsub.is_zero() || rsub.constant_value() == Rat(0);
            CHECK(rs_zero == rsub_zero);
        }
    }
}

TEST_CASE("sturm isolation finds all roots with exact rationals recognized") {
    // (x - 1/2)(x - 1/3)(x^2 - 2) has two rational and two irrational roots
    UPoly p = UPoly::from_roots({Rat(1, 2), Rat(1, 3)});
    UPoly q(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)});
    p = p * q;
    auto roots = isolate_roots(p, Rat(-2), Rat(2));
    REQUIRE(roots.size() == 4);
    CHECK(compare_root_rat(roots[0], Rat(-1)) < 0);  // -sqrt(2)
    CHECK(roots[1].is_exact());
    CHECK(roots[1].value_if_exact() == Rat(1, 3));
    CHECK(roots[2].is_exact());
    CHECK(roots[2].value_if_exact() == Rat(1, 2));
    CHECK(compare_root_rat(roots[3], Rat(1)) > 0);  // sqrt(2)
    CHECK(compare_roots(roots[0], roots[3]) < 0);
}

TEST_CASE("root comparison detects equality through distinct witnesses") {
    // sqrt(2) isolated from x^2-2 and from (x^2-2)(x-3)
    UPoly a(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)});
    UPoly b = a * UPoly::from_roots({Rat(3)});
    auto ra = isolate_roots(a, Rat(0), Rat(2));
    auto rb = isolate_roots(b, Rat(0), Rat(4));
    REQUIRE(ra.size() == 1);
    REQUIRE(rb.size() == 2);
    CHECK(compare_roots(ra[0], rb[0]) == 0);
    CHECK(compare_roots(ra[0], rb[1]) < 0);
}

TEST_CASE("roots at interval endpoints are found") {
    UPoly p = UPoly::from_roots({Rat(0), Rat(1), Rat(1, 2)});
    auto roots = isolate_roots(p, Rat(0), Rat(1));
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].value_if_exact() == Rat(0));
    CHECK(roots[2].value_if_exact() == Rat(1));
}

TEST_CASE("multiple roots are isolated once") {
    UPoly p = UPoly::from_roots({Rat(1, 2), Rat(1, 2), Rat(1, 4)});
    auto roots = isolate_roots(p, Rat(0), Rat(1));
    REQUIRE(roots.size() == 2);
}

TEST_CASE("high degree sturm behaves") {
    // product of (x - i/10) for i=1..8 — 8 rational roots
    std::vector<Rat> rts;
    for (int i = 1; i <= 8; ++i) rts.push_back(Rat(i, 10));
    UPoly p = UPoly::from_roots(rts);
    auto roots = isolate_roots(p, Rat(0), Rat(1));
    CHECK(roots.size() == 8);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        CHECK(roots[i].is_exact());
        CHECK(roots[i].value_if_exact() == rat((long)i + 1, 10));
    }
}

#include <random>

#include "doctest.h"
#include "pfcell/pfaff.hpp"
#include "pfcell/univariate.hpp"
#include "test_util.hpp"

using namespace pfcell;
using pfcell::rat;
using pfcell_test::rand_poly;
using pfcell_test::rand_rat;
using pfcell_test::rand_unit;

namespace {

// u1 = exp(x1) on [0,1], as a chain of length 1: du1/dx1 = u1.
ChainPtr exp_chain() {
    // slots: x1, u1
    Poly p(2);
    p.add_term({0, 1}, Rat(1));
    auto eval = std::make_shared<ExpEvaluator>(0);
    return std::make_shared<PfaffianChain>(
        1, std::vector<std::vector<Poly>>{{p}}, unit_box(1),
        std::vector<std::shared_ptr<const ChainEvaluator>>{eval});
}

ChainPtr exp_chain_wide_domain() {
    Poly p(2);
    p.add_term({0, 1}, Rat(1));
    auto eval = std::make_shared<ExpEvaluator>(0);
    Box dom{Interval(Rat(-1), Rat(3, 2))};
    return std::make_shared<PfaffianChain>(
        1, std::vector<std::vector<Poly>>{{p}}, dom,
        std::vector<std::shared_ptr<const ChainEvaluator>>{eval});
}

// Independent enclosure of e by partial sums with the classical factorial
// tail bound: e = sum 1/k! with tail < 2/(n+1)!.
Interval oracle_e(int n) {
    Rat sum(0), fact(1);
    for (int k = 0; k <= n; ++k) {
        if (k > 0) fact *= k;
        sum += Rat(1) / fact;
    }
    Rat tail = Rat(2) / (fact * (n + 1));
    return Interval(sum, sum + tail);
}

}  // namespace

TEST_CASE("derivative of pure polynomial") {
    auto chain = PfaffianChain::empty(1);
    auto x1 = PfaffPoly::box_var(chain, 1, 0);
    auto f = x1 * x1;
    CHECK(f.derive(0) == x1.scaled(2));
}

TEST_CASE("chain equation forces derivative of the symbol") {
    auto chain = exp_chain();
    auto u1 = PfaffPoly::chain_symbol(chain, 1, 0);
    CHECK(u1.derive(0) == u1);
}

TEST_CASE("product rule through the chain") {
    auto chain = exp_chain();
    auto x1 = PfaffPoly::box_var(chain, 1, 0);
    auto u1 = PfaffPoly::chain_symbol(chain, 1, 0);
    auto f = x1 * u1;
    CHECK(f.derive(0) == u1 + x1 * u1);
}

TEST_CASE("total degree conventions") {
    auto chain = std::make_shared<PfaffianChain>(
        1,
        std::vector<std::vector<Poly>>{
            {[] {
                Poly p(3);
                p.add_term({0, 1, 0}, Rat(1));
                return p;
            }()},
            {[] {
                Poly p(3);
                p.add_term({0, 1, 1}, Rat(1));
                return p;
            }()}},
        unit_box(1),
        std::vector<std::shared_ptr<const ChainEvaluator>>{std::make_shared<ExpEvaluator>(0),
                                                           std::make_shared<ExpEvaluator>(0)});
    auto x1 = PfaffPoly::box_var(chain, 1, 0);
    auto u1 = PfaffPoly::chain_symbol(chain, 1, 0);
    auto u2 = PfaffPoly::chain_symbol(chain, 1, 1);
    CHECK((x1 * x1 * u2 + PfaffPoly::constant(chain, 1, Rat(3))).degree() == 3);
    CHECK(PfaffPoly::zero(chain, 1).degree() == 0);
    CHECK(PfaffPoly::constant(chain, 1, Rat(7)).degree() == 0);
    CHECK((x1 + u1).degree() == 1);
}

TEST_CASE("exact evaluation of polynomial case") {
    auto chain = PfaffianChain::empty(1);
    auto x1 = PfaffPoly::box_var(chain, 1, 0);
    auto f = x1 * x1;
    Interval got = f.eval_interval({Rat(1, 2)}, Rat(1, 1000));
    CHECK(got.is_point());
    CHECK(got.lo == Rat(1, 4));
}

TEST_CASE("validated evaluation of e") {
    auto chain = exp_chain();
    auto u1 = PfaffPoly::chain_symbol(chain, 1, 0);
    Interval got = u1.eval_interval({Rat(1)}, Rat(1, 1u << 22));
    Interval e20 = oracle_e(20);
    CHECK(got.lo >= rat(271828, 100000));
    CHECK(got.hi <= rat(271829, 100000));
    // the enclosure must contain the oracle's midpoint
    CHECK(got.lo <= e20.hi);
    CHECK(got.hi >= e20.lo);
}

TEST_CASE("series ODE evaluator agrees with exp") {
    // Same chain evaluated through the generic validated integrator.
    Poly p(2);
    p.add_term({0, 1}, Rat(1));
    auto eval = std::make_shared<SeriesODEEvaluator>(0, 0, std::vector<Poly>{[] {
                                                         Poly q(2);
                                                         q.add_term({0, 1}, Rat(1));
                                                         return q;
                                                     }()},
                                                     std::vector<Rat>{Rat(1)});
    auto chain = std::make_shared<PfaffianChain>(
        1, std::vector<std::vector<Poly>>{{p}}, unit_box(1),
        std::vector<std::shared_ptr<const ChainEvaluator>>{eval});
    auto u1 = PfaffPoly::chain_symbol(chain, 1, 0);
    Interval got = u1.eval_interval({Rat(1)}, Rat(1, 1u << 16));
    Interval e20 = oracle_e(20);
    CHECK(got.lo <= e20.hi);
    CHECK(got.hi >= e20.lo);
    CHECK(got.width() <= Rat(1, 1000));
    Interval at_half = u1.eval_interval({Rat(1, 2)}, Rat(1, 1u << 16));
    // e^(1/2) in [1.64872, 1.64873]
    CHECK(at_half.lo >= rat(164871, 100000));
    CHECK(at_half.hi <= rat(164874, 100000));
}

TEST_CASE("point outside domain is rejected") {
    auto chain = exp_chain_wide_domain();
    auto u1 = PfaffPoly::chain_symbol(chain, 1, 0);
    CHECK_THROWS_AS(u1.eval_interval({Rat(2)}, Rat(1, 100)), std::domain_error);
}

TEST_CASE("certified signs") {
    auto chain = exp_chain();
    auto x1 = PfaffPoly::box_var(chain, 1, 0);
    auto half = PfaffPoly::constant(chain, 1, Rat(1, 2));
    CHECK((x1 - half).sign_at({Rat(1, 2)}) == Sign::Zero);
    CHECK((x1 - half).sign_at({Rat(3, 4)}) == Sign::Positive);
    auto u1 = PfaffPoly::chain_symbol(chain, 1, 0);
    auto three = PfaffPoly::constant(chain, 1, Rat(3));
    CHECK((u1 - three).sign_at({Rat(1)}) == Sign::Negative);
}

TEST_CASE("derivation is linear") {
    std::mt19937 rng(20240811);
    auto chain = PfaffianChain::empty(3);
    for (int trial = 0; trial < 40; ++trial) {
        Poly pf = rand_poly(rng, 3, 4, 5);
        Poly pg = rand_poly(rng, 3, 4, 5);
        PfaffPoly f(chain, 3, pf), g(chain, 3, pg);
        Rat a = rand_rat(rng), b = rand_rat(rng);
        std::size_t axis = rng() % 3;
        auto lhs = (f.scaled(a) + g.scaled(b)).derive(axis);
        auto rhs = f.derive(axis).scaled(a) + g.derive(axis).scaled(b);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("mixed partials commute") {
    std::mt19937 rng(77);
    auto chain = exp_chain();
    for (int trial = 0; trial < 25; ++trial) {
        // random polynomial in x1, x2, x3, u1 over a 3-variable space
        Poly p = rand_poly(rng, 4, 4, 5);
        PfaffPoly f(chain, 3, p);
        std::size_t i = rng() % 3, j = rng() % 3;
        CHECK(f.derive(i).derive(j) == f.derive(j).derive(i));
    }
}

TEST_CASE("derivative degree bound") {
    std::mt19937 rng(5150);
    auto chain = exp_chain();
    unsigned chain_deg = chain->max_chain_degree();
    for (int trial = 0; trial < 40; ++trial) {
        Poly p = rand_poly(rng, 3, 5, 6);
        PfaffPoly f(chain, 2, p);
        for (std::size_t axis = 0; axis < 2; ++axis) {
            auto d = f.derive(axis);
            if (d.is_zero()) continue;
            CHECK(d.degree() <= f.degree() + std::max(chain_deg, 1u) - 1);
        }
    }
}

TEST_CASE("derivative matches central differences") {
    std::mt19937 rng(991);
    auto chain = PfaffianChain::empty(2);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Poly p = rand_poly(rng, 2, 5, 6);
        PfaffPoly f(chain, 2, p);
        for (int pt = 0; pt < 6; ++pt) {
            std::vector<Rat> x{rand_unit(rng), rand_unit(rng)};
            for (std::size_t axis = 0; axis < 2; ++axis) {
                Rat h(1, 4096);
                auto xp = x, xm = x;
                xp[axis] += h;
                xm[axis] -= h;
                Rat fd = (f.eval_exact(xp) - f.eval_exact(xm)) / (2 * h);
                Rat d = f.derive(axis).eval_exact(x);
                // exact error term: sum_{j>=1} f^(2j+1)(x) h^(2j) / (2j+1)!
                // bounded via the raw polynomial derivative layer
                Poly third = p.derivative(axis).derivative(axis).derivative(axis);
                Rat bound(0);
                Poly cur = third;
                Rat hp = h * h, fact(6);
                int order = 3;
                while (!cur.is_zero()) {
                    Interval mag = cur.eval_box(unit_box(2));
                    bound += rat_max(rat_abs(mag.lo), rat_abs(mag.hi)) * hp / fact;
                    cur = cur.derivative(axis).derivative(axis);
                    hp *= h * h;
                    fact *= (order + 1) * (order + 2);
                    order += 2;
                }
                CHECK(rat_abs(fd - d) <= bound);
                ++checked;
            }
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("validated exp against chain evaluation across grid") {
    auto chain = exp_chain();
    auto u1 = PfaffPoly::chain_symbol(chain, 1, 0);
    auto x1 = PfaffPoly::box_var(chain, 1, 0);
    auto f = x1 * u1;
    auto df = f.derive(0);  // u1 + x1 u1
    Rat h(1, 64);
    for (int i = 1; i < 8; ++i) {
        std::vector<Rat> x{Rat(i, 8)};
        std::vector<Rat> xp{x[0] + h}, xm{x[0] - h};
        Interval fp = f.eval_interval(xp, Rat(1, 1u << 24));
        Interval fm = f.eval_interval(xm, Rat(1, 1u << 24));
        Interval d = df.eval_interval(x, Rat(1, 1u << 24));
        Rat fd_lo = (fp.lo - fm.hi) / (2 * h), fd_hi = (fp.hi - fm.lo) / (2 * h);
        // |(x e^x)'''| = (x+3)e^x <= 4e < 11 on [0,1]
        Rat err = 2 * h * h;
        CHECK(fd_hi + err >= d.lo);
        CHECK(fd_lo - err <= d.hi);
    }
}

#include <catch_amalgamated.hpp>

#include <random>

#include "vtrees/series.hpp"

using namespace vtrees;

namespace {

std::mt19937_64 rng(0x5eed5eedULL);

Rational random_rational(int num_span = 9, int den_span = 6) {
    std::uniform_int_distribution<long> num(-num_span, num_span);
    std::uniform_int_distribution<long> den(1, den_span);
    return make_rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("series arithmetic basics") {
    PowerSeries z2(4);
    z2[2] = 1;
    PowerSeries d = ps_derive(z2);
    CHECK(d[1] == 2);
    CHECK(d.order() == 3);

    // exp(z^2) through degree 4 via composition
    PowerSeries expz(4);
    for (int k = 0; k <= 4; ++k) expz[k] = Rational(1) / Rational(factorial(static_cast<unsigned>(k)));
    PowerSeries comp = ps_compose(expz, z2);
    CHECK(comp[0] == 1);
    CHECK(comp[1] == 0);
    CHECK(comp[2] == 1);
    CHECK(comp[3] == 0);
    CHECK(comp[4] == make_rational(1, 2));

    PowerSeries t1 = t1_series(4);
    CHECK(ps_mul(t1, t1)[3] == 1);  // 2 * (1 * 1/2)

    SECTION("results never extend beyond the minimum input order") {
        PowerSeries a(3), b(7);
        CHECK(ps_add(a, b).order() == 3);
        CHECK(ps_mul(a, b).order() == 3);
        CHECK(ps_sub(b, a).order() == 3);
    }
    SECTION("composition requires a zero inner constant term") {
        PowerSeries inner = ps_const(1, 3);
        CHECK_THROWS_AS(ps_compose(expz, inner), std::invalid_argument);
    }
    SECTION("division requires an invertible constant term") {
        PowerSeries zero_const(3);
        CHECK_THROWS_AS(ps_div(expz, zero_const), std::invalid_argument);
    }
    SECTION("integrate then derive is the identity above degree 0") {
        PowerSeries a(5);
        for (int k = 0; k <= 5; ++k) a[k] = random_rational();
        PowerSeries round = ps_derive(ps_integrate(a));
        for (int k = 0; k <= 5; ++k) CHECK(round[k] == a[k]);
    }
}

TEST_CASE("falling factorials and generalized binomials") {
    CHECK(gen_binomial(Rational(-2), 2) == 3);
    CHECK(gen_binomial(random_rational(), 0) == 1);
    CHECK(falling_factorial(Rational(-5), 1) == -5);
    CHECK(falling_factorial(make_rational(1, 2), 2) == make_rational(-1, 4));
}

TEST_CASE("partial Bell polynomials") {
    CHECK(bell_partial(3, 1, {Rational(5), Rational(7), Rational(11)}) == 11);
    CHECK(bell_partial(3, 2, {Rational(1), Rational(1), Rational(1)}) == 3);   // 3 x1 x2
    CHECK(bell_partial(4, 2, {Rational(1), Rational(1), Rational(1)}) == 7);   // 3 x2^2 + 4 x1 x3
    CHECK_THROWS_AS(bell_partial(3, 4, {Rational(1)}), std::invalid_argument);

    SECTION("defining bivariate generating identity") {
        // exp(u sum x_m t^m/m!) = 1 + sum t^n/n! sum_k u^k B_{n,k}; a degree-8
        // polynomial identity in u, pinned by evaluating at nine u values
        const int deg = 8;
        std::vector<Rational> xs(deg);
        for (auto& x : xs) x = random_rational();
        PowerSeries s(deg);
        for (int m = 1; m <= deg; ++m)
            s[m] = xs[static_cast<size_t>(m - 1)] / Rational(factorial(static_cast<unsigned>(m)));
        for (long uval = 1; uval <= 9; ++uval) {
            PowerSeries lhs = ps_exp(ps_scale(Rational(uval), s));
            for (int n = 1; n <= deg; ++n) {
                Rational rhs = 0;
                Rational upow = 1;
                for (int k = 1; k <= n; ++k) {
                    upow *= Rational(uval);
                    rhs += upow * bell_partial(n, k, xs);
                }
                REQUIRE(lhs[n] * Rational(factorial(static_cast<unsigned>(n))) == rhs);
            }
        }
    }
}

TEST_CASE("potential polynomials") {
    CHECK(potential_polynomial(1, Rational(3), {Rational(2)}) == 6);  // r x1
    CHECK(potential_polynomial(2, Rational(-1), {Rational(1), Rational(1)}) == 1);  // 2x1^2 - x2

    SECTION("matches the direct r-th power of the series") {
        const int deg = 8;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Rational> xs(deg);
            for (auto& x : xs) x = random_rational();
            Rational r = random_rational();
            PowerSeries base = ps_const(1, deg);
            for (int m = 1; m <= deg; ++m)
                base[m] = xs[static_cast<size_t>(m - 1)] / Rational(factorial(static_cast<unsigned>(m)));
            PowerSeries powed = ps_binomial_pow(base, r);
            for (int n = 1; n <= deg; ++n)
                REQUIRE(powed[n] * Rational(factorial(static_cast<unsigned>(n))) ==
                        potential_polynomial(n, r, xs));
        }
    }
}

TEST_CASE("cluster-to-virial conversion") {
    SECTION("symbolic relations in low degree") {
        for (int trial = 0; trial < 25; ++trial) {
            Rational b2 = random_rational(), b3 = random_rational();
            std::vector<Rational> b = {Rational(1), b2, b3};
            CHECK(lagrange_virial(b, 1) == -b2);
            CHECK(lagrange_virial(b, 2) == Rational(6) * b2 * b2 - Rational(2) * b3);
        }
    }
    SECTION("one-point closed form") {
        std::vector<Rational> b = {Rational(1)};
        for (int m = 2; m <= 7; ++m) {
            Rational v(factorial(static_cast<unsigned>(m - 1)));
            b.push_back(m % 2 == 0 ? -v : v);
        }
        for (int n = 1; n <= 6; ++n) {
            Rational expected(factorial(static_cast<unsigned>(n)));
            CHECK(lagrange_virial(b, n) == expected);
            CHECK(reversion_oracle(b, n) == expected);
        }
    }
    SECTION("ideal gas") {
        std::vector<Rational> b(8, Rational(0));
        b[0] = 1;
        for (int n = 1; n <= 6; ++n) {
            CHECK(lagrange_virial(b, n) == 0);
            CHECK(reversion_oracle(b, n) == 0);
        }
    }
    SECTION("oracle equality on random rational lists") {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Rational> b = {Rational(1)};
            for (int i = 0; i < 10; ++i) b.push_back(random_rational());
            std::uniform_int_distribution<int> pick_n(1, 10);
            int n = pick_n(rng);
            REQUIRE(lagrange_virial(b, n) == reversion_oracle(b, n));
        }
    }
    SECTION("rejects unnormalized input") {
        std::vector<Rational> b = {Rational(2), Rational(1)};
        CHECK_THROWS_AS(lagrange_virial(b, 1), std::invalid_argument);
        CHECK_THROWS_AS(reversion_oracle(b, 1), std::invalid_argument);
    }
}

TEST_CASE("tree generating functions") {
    PowerSeries t1 = t1_series(4);
    CHECK(t1[1] == 1);
    CHECK(t1[2] == make_rational(1, 2));
    CHECK(t1[3] == make_rational(2, 3));
    CHECK(t1[4] == make_rational(9, 8));
    CHECK(rooted_tree_series(3)[3] == make_rational(3, 2));  // 9/6
    CHECK(tree_series(4)[4] == make_rational(2, 3));         // 16/24
}

TEST_CASE("identity suite") {
    SECTION("all eight hold through degree 12") {
        for (const auto& chk : identity_suite(12)) {
            INFO(chk.name);
            CHECK(chk.pass);
        }
    }
    SECTION("degenerate order") {
        for (const auto& chk : identity_suite(1)) {
            INFO(chk.name);
            CHECK(chk.pass);
        }
    }
    SECTION("perturbed T1 breaks the suite") {
        int failures = 0;
        for (const auto& chk : identity_suite_perturbed(12)) failures += chk.pass ? 0 : 1;
        CHECK(failures > 0);
    }
}

TEST_CASE("combinatorial binomial identity") {
    CHECK(binomial_identity_check(2, 1));
    CHECK(binomial_identity_check(3, 3));
    for (int n = 1; n <= 12; ++n)
        for (int m = 1; m <= n; ++m) REQUIRE(binomial_identity_check(n, m));
}

TEST_CASE("pretty printer") {
    PowerSeries t1 = t1_series(3);
    CHECK(ps_pretty(t1) == "1 z^1\n1/2 z^2\n2/3 z^3\n");
    CHECK(ps_pretty(PowerSeries(2)) == "0\n");
}

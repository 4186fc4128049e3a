// Closed-form transition probabilities and the parameter mappings between them.

#include <doctest.h>

#include <cmath>

#include "lzgen/constants.hpp"
#include "lzgen/lz_analytics.hpp"

using namespace lzgen;

TEST_CASE("lz_probability limits and monotonicity") {
    CHECK(lz_probability({0.0, 1e18}) == 1.0);

    // fully diabatic and fully adiabatic limits
    CHECK(lz_probability({1e9, 1e30}) == doctest::Approx(1.0));
    CHECK(lz_probability({1e9, 1e15}) < 1e-50);

    double prev = 0.0;
    for (double beta = 1e18; beta < 1e24; beta *= 3.0) {
        const double p = lz_probability({1e9, beta});
        CHECK(p > prev);
        prev = p;
    }
    prev = 1.0;
    for (double d = 1e8; d < 1e11; d *= 2.0) {
        const double p = lz_probability({d, 1e20});
        CHECK(p < prev);
        prev = p;
    }
    CHECK_THROWS_AS(lz_probability({1e9, 0.0}), ValidationError);
    CHECK_THROWS_AS(lz_probability({1e9, -1.0}), ValidationError);
}

TEST_CASE("exponent equals exp(-2 pi xi) with xi = (E12/hbar)^2 / alpha") {
    // D = 2 E12/hbar, beta = alpha makes the two forms of the asymptotic result identical
    for (double e12_over_hbar : {1e9, 5e9, 2e10}) {
        for (double alpha : {1e19, 1e20, 3e21}) {
            const double xi = e12_over_hbar * e12_over_hbar / alpha;
            const double d_hz = 2.0 * e12_over_hbar / (2.0 * pi);
            CHECK(lz_probability({d_hz, alpha}) ==
                  doctest::Approx(std::exp(-2.0 * pi * xi)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cpb excitation probability") {
    SUBCASE("zero Josephson energy always excites") {
        CHECK(cpb_excitation_probability_from_eq(19.27e9, 0.0, 1e9) == 1.0);
    }
    SUBCASE("frozen value for the 300 ps Appendix-style sweep") {
        const double lambda = 0.8 / 300e-12;
        CHECK(cpb_excitation_probability_from_eq(19.27e9, 1e9, lambda) ==
              doctest::Approx(0.9084342769603329).epsilon(1e-12));
    }
    SUBCASE("halving the rate squares the probability") {
        for (double lambda : {1e8, 1e9, 1e10}) {
            const double p1 = cpb_excitation_probability_from_eq(19.27e9, 1e9, lambda);
            const double p2 = cpb_excitation_probability_from_eq(19.27e9, 1e9, 0.5 * lambda);
            CHECK(p2 == doctest::Approx(p1 * p1).epsilon(1e-12));
        }
    }
    SUBCASE("same formula as lz_probability under the documented mapping") {
        const double fq = 19.27e9, fj = 1e9;
        for (double lambda : {1e8, 2.6667e9, 1e11}) {
            const double via_lz =
                lz_probability({fj, 2.0 * (2.0 * pi * fq) * lambda});
            CHECK(cpb_excitation_probability_from_eq(fq, fj, lambda) ==
                  doctest::Approx(via_lz).epsilon(1e-12));
        }
    }
    SUBCASE("nonpositive rate rejected") {
        CHECK_THROWS_AS(cpb_excitation_probability_from_eq(19.27e9, 1e9, 0.0),
                        ValidationError);
    }
}

TEST_CASE("flux excitation probability") {
    FluxParams p;
    p.ej_hz = 250e9;
    p.delta_hz = 1e9;
    p.alpha = 0.7;

    SUBCASE("zero splitting always excites") {
        FluxParams q = p;
        q.delta_hz = 1e-30;
        CHECK(flux_excitation_probability(q, 4.19e9) == doctest::Approx(1.0));
    }
    SUBCASE("frozen value for the full 0.2 Phi0 sweep in 300 ps, angular rate") {
        const double mu = 2.0 * pi * 0.2 / 300e-12;
        CHECK(flux_excitation_probability(p, mu) ==
              doctest::Approx(0.9866234980982835).epsilon(1e-12));
    }
    SUBCASE("monotone increasing in E_J at fixed splitting and rate") {
        double prev = 0.0;
        for (double ej = 50e9; ej <= 250e9; ej += 50e9) {
            FluxParams q = p;
            q.ej_hz = ej;
            const double v = flux_excitation_probability(q, 4.19e9);
            CHECK(v > prev);
            prev = v;
        }
    }
    SUBCASE("invalid inputs rejected") {
        CHECK_THROWS_AS(flux_excitation_probability(p, 0.0), ValidationError);
        FluxParams q = p;
        q.alpha = 0.4;
        CHECK_THROWS_AS(flux_excitation_probability(q, 1e9), ValidationError);
    }
}

// Pulse shapes, catapult assembly, and effective rise times.
// The gaussian/exponential effective-rise-time expectations are checked against a
// dense-sampling finite-difference oracle built here in the test.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "lzgen/pulse.hpp"

using namespace lzgen;

namespace {

// independent oracle: locate the crossing on a dense grid, differentiate numerically
double eff_rise_oracle(const PulseSegment& seg, double crossing) {
    const int n = 2'000'000;
    double t_star = -1.0;
    double prev = seg.value(0.0);
    for (int i = 1; i <= n; ++i) {
        const double t = seg.t_r * i / n;
        const double v = seg.value(t);
        if ((prev - crossing) * (v - crossing) <= 0.0 && prev != v) {
            t_star = t - seg.t_r / n * (v - crossing) / (v - prev);
            break;
        }
        prev = v;
    }
    REQUIRE(t_star > 0.0);
    const double h = seg.t_r * 1e-7;
    const double slope = (seg.value(t_star + h) - seg.value(t_star - h)) / (2.0 * h);
    return (seg.chi_end - seg.chi_start) / slope;
}

} // namespace

TEST_CASE("shape endpoints are exact and trajectories are monotone") {
    for (PulseShape s : {PulseShape::Linear, PulseShape::GaussianRise, PulseShape::TanhRise,
                         PulseShape::ExponentialRise}) {
        const PulseSegment seg{s, 0.1, 0.9, 1e-9};
        CHECK(seg.value(0.0) == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(seg.value(seg.t_r) == doctest::Approx(0.9).epsilon(1e-12));
        double prev = seg.value(0.0);
        for (int i = 1; i <= 1000; ++i) {
            const double v = seg.value(seg.t_r * (i / 1000.0));
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("shape checkpoints") {
    SUBCASE("linear midpoint") {
        const PulseSegment seg{PulseShape::Linear, 0.1, 0.9, 2e-9};
        CHECK(seg.value(1e-9) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("gaussian endpoint normalization") {
        // (e^0 - e^-9)/(1 - e^-9) = 1 exactly
        CHECK(shape_progress(PulseShape::GaussianRise, 1.0, 0.0) == doctest::Approx(1.0));
        CHECK(shape_progress(PulseShape::GaussianRise, 0.0, 0.0) == doctest::Approx(0.0));
    }
    SUBCASE("tanh midpoint") {
        const PulseSegment seg{PulseShape::TanhRise, 0.1, 0.9, 2e-9};
        CHECK(seg.value(1e-9) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("out-of-window sampling rejected") {
        const PulseSegment seg{PulseShape::Linear, 0.1, 0.9, 1e-9};
        CHECK_THROWS_AS(seg.value(-1e-12), ValidationError);
        CHECK_THROWS_AS(seg.value(1.1e-9), ValidationError);
    }
    SUBCASE("exponential endpoint validation") {
        CHECK_THROWS_AS((PulseSegment{PulseShape::ExponentialRise, -0.1, 0.9, 1e-9}).value(0),
                        ValidationError);
        CHECK_THROWS_AS((PulseSegment{PulseShape::ExponentialRise, 0.0, 0.9, 1e-9}).value(0),
                        ValidationError);
    }
}

TEST_CASE("catapult construction") {
    SUBCASE("published endpoint example: 2 chi/chi_0 from -0.4 to 0.7") {
        const auto seq = catapult(-0.2, 0.35, 1.0, 300e-12);
        CHECK(seq.segments[0].chi_start == doctest::Approx(-0.2));
        CHECK(seq.segments[0].chi_end == doctest::Approx(-0.5));
        CHECK(seq.segments[1].chi_start == doctest::Approx(-0.5));
        CHECK(seq.segments[1].chi_end == doctest::Approx(0.5));
        CHECK(seq.segments[2].chi_start == doctest::Approx(0.5));
        CHECK(seq.segments[2].chi_end == doctest::Approx(0.35));
        CHECK(seq.duration() == doctest::Approx(9e-10));
    }
    SUBCASE("middle slew rate is chi_0/t_r regardless of endpoints") {
        for (double ci : {-0.5, -0.2, 0.0, 0.3}) {
            for (double cf : {-0.4, 0.0, 0.25, 0.5}) {
                const auto seq = catapult(ci, cf, 1.0, 250e-12);
                const auto& mid = seq.segments[1];
                CHECK((mid.chi_end - mid.chi_start) / mid.t_r ==
                      doctest::Approx(1.0 / 250e-12));
            }
        }
    }
    SUBCASE("symmetric sequence crosses zero at the temporal midpoint") {
        const auto seq = catapult(0.0, 0.0, 1.0, 1e-9);
        CHECK(seq.value(1.5e-9) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("reduced-range variant shrinks only the traversal") {
        const auto seq = catapult(-0.2, 0.35, 1.0, 1e-9, PulseShape::Linear, 0.8);
        CHECK(seq.segments[1].chi_start == doctest::Approx(-0.4));
        CHECK(seq.segments[1].chi_end == doctest::Approx(0.4));
        CHECK(seq.segments[0].chi_start == doctest::Approx(-0.2));
        CHECK(seq.segments[2].chi_end == doctest::Approx(0.35));
    }
    SUBCASE("endpoints outside the range are rejected") {
        CHECK_THROWS_AS(catapult(-0.6, 0.0, 1.0, 1e-9), ValidationError);
        CHECK_THROWS_AS(catapult(0.0, 0.51, 1.0, 1e-9), ValidationError);
    }
    SUBCASE("reversal is an involution and mirrors the protocol") {
        const auto seq = catapult(-0.2, 0.35, 1.0, 1e-9);
        const auto rev = seq.reversed();
        CHECK(rev.segments[0].chi_start == doctest::Approx(0.35));
        CHECK(rev.segments[2].chi_end == doctest::Approx(-0.2));
        const auto back = rev.reversed();
        for (int k = 0; k < 3; ++k) {
            CHECK(back.segments[k].chi_start == seq.segments[k].chi_start);
            CHECK(back.segments[k].chi_end == seq.segments[k].chi_end);
        }
    }
    SUBCASE("sampling is continuous at 1 ps resolution") {
        const auto seq = catapult(-0.15, 0.4, 1.0, 300e-12);
        const double max_slew = 1.0 / 300e-12;
        double prev = seq.value(0.0);
        const double dt = 1e-12;
        for (double t = dt; t <= seq.duration(); t += dt) {
            const double v = seq.value(std::min(t, seq.duration()));
            CHECK(std::abs(v - prev) <= max_slew * dt * (1.0 + 1e-9));
            prev = v;
        }
    }
}

TEST_CASE("effective rise time") {
    SUBCASE("linear shape gives t_r exactly") {
        const PulseSegment seg{PulseShape::Linear, 0.1, 0.9, 7e-10};
        CHECK(effective_rise_time(seg, 0.5) == doctest::Approx(7e-10).epsilon(1e-12));
    }
    SUBCASE("tanh with symmetric endpoints: t_r tanh(3)/3") {
        const PulseSegment seg{PulseShape::TanhRise, 0.1, 0.9, 1e-9};
        CHECK(effective_rise_time(seg, 0.5) ==
              doctest::Approx(1e-9 * 0.3316849178955768).epsilon(1e-9));
    }
    SUBCASE("gaussian against the finite-difference oracle") {
        const PulseSegment seg{PulseShape::GaussianRise, 0.1, 0.9, 1e-9};
        const double oracle = eff_rise_oracle(seg, 0.5);
        CHECK(effective_rise_time(seg, 0.5) == doctest::Approx(oracle).epsilon(1e-5));
        // frozen from the oracle: 0.4003109638808762 t_r
        CHECK(effective_rise_time(seg, 0.5) ==
              doctest::Approx(1e-9 * 0.4003109638808762).epsilon(1e-9));
    }
    SUBCASE("exponential against the finite-difference oracle") {
        const PulseSegment seg{PulseShape::ExponentialRise, 0.1, 0.9, 1e-9};
        const double oracle = eff_rise_oracle(seg, 0.5);
        CHECK(effective_rise_time(seg, 0.5) == doctest::Approx(oracle).epsilon(1e-5));
        CHECK(effective_rise_time(seg, 0.5) ==
              doctest::Approx(1e-9 * 0.7281913813014701).epsilon(1e-9));
    }
    SUBCASE("crossing must be bracketed") {
        const PulseSegment seg{PulseShape::Linear, 0.1, 0.9, 1e-9};
        CHECK_THROWS_AS(effective_rise_time(seg, 0.95), ValidationError);
        CHECK_THROWS_AS(effective_rise_time(seg, 0.1), ValidationError);
    }
}

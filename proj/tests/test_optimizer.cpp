// Constrained efficiency optimization: operating points, determinism, envelopes.

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "lzgen/constants.hpp"
#include "lzgen/optimizer.hpp"

using namespace lzgen;

namespace {

OptimizationProblem cpb_problem(double t_r = 300e-12, double n_rms = 0.5e-3) {
    OptimizationProblem prob;
    prob.architecture = Architecture::Cpb;
    prob.cpb.ej_hz = 1e9;
    prob.cpb.cj = 1e-15;
    prob.cpb.cg = 1e-17;
    prob.cpb.n_rms = n_rms;
    prob.cpb.gamma_nr = 1e6;
    prob.t_r = t_r;
    return prob;
}

OptimizationProblem flux_problem(double linewidth_hz, double t_r = 300e-12) {
    OptimizationProblem prob;
    prob.architecture = Architecture::Flux;
    prob.flux.delta_hz = 1e9;
    prob.flux.alpha = 0.7;
    prob.flux.phi_rms = 1e-5;
    prob.flux.gamma_nr = 2e6;
    prob.t_r = t_r;
    prob.linewidth_max_hz = linewidth_hz;
    prob.ej_max_hz = 250e9;
    return prob;
}

} // namespace

TEST_CASE("CPB optimum reproduces the published operating point") {
    const OptimizationResult res = optimize_cpb(cpb_problem());
    REQUIRE(res.status == OptimizationStatus::Ok);
    CHECK(res.co > 1.8e-15);
    CHECK(res.co < 2.8e-15);
    CHECK(res.report.eta > 0.886);
    CHECK(res.report.eta < 0.926);
    CHECK(res.report.t1 > 28.8e-9);
    CHECK(res.report.t1 < 38.8e-9);
    CHECK(res.report.rep_rate_hz > 4.9e6);
    CHECK(res.report.rep_rate_hz < 6.9e6);
    CHECK(res.t1_slack >= 0.0);
    CHECK(res.linewidth_slack_hz >= 0.0);
}

TEST_CASE("CPB optimum barely moves with a tenfold lower charge noise") {
    const OptimizationResult a = optimize_cpb(cpb_problem(300e-12, 0.5e-3));
    const OptimizationResult b = optimize_cpb(cpb_problem(300e-12, 0.05e-3));
    REQUIRE(a.status == OptimizationStatus::Ok);
    REQUIRE(b.status == OptimizationStatus::Ok);
    CHECK(std::abs(a.report.eta - b.report.eta) < 0.02);
    // the linewidths do differ
    CHECK(b.report.gamma_phi < 0.2 * a.report.gamma_phi);
}

TEST_CASE("CPB with an overwhelming non-radiative channel tends to zero efficiency") {
    OptimizationProblem prob = cpb_problem();
    prob.cpb.gamma_nr = 1e12;
    const OptimizationResult res = optimize_cpb(prob);
    REQUIRE(res.status == OptimizationStatus::Ok);
    CHECK(res.report.eta < 1e-3);
}

TEST_CASE("optimizer determinism is bit-exact") {
    const OptimizationResult a = optimize_cpb(cpb_problem());
    const OptimizationResult b = optimize_cpb(cpb_problem());
    CHECK(std::memcmp(&a.co, &b.co, sizeof a.co) == 0);
    CHECK(std::memcmp(&a.report.eta, &b.report.eta, sizeof a.report.eta) == 0);
    const OptimizationResult f1 = optimize_flux(flux_problem(10e6));
    const OptimizationResult f2 = optimize_flux(flux_problem(10e6));
    CHECK(std::memcmp(&f1.co, &f2.co, sizeof f1.co) == 0);
    CHECK(std::memcmp(&f1.report.eta, &f2.report.eta, sizeof f1.report.eta) == 0);
}

TEST_CASE("refinement consistency: doubling the grid moves eta by less than 1e-4") {
    OptimizationProblem prob = cpb_problem();
    prob.grid_points = 100;
    const double eta1 = optimize_cpb(prob).report.eta;
    prob.grid_points = 200;
    const double eta2 = optimize_cpb(prob).report.eta;
    CHECK(std::abs(eta1 - eta2) < 1e-4);
}

TEST_CASE("contradictory constraints are reported as infeasible") {
    OptimizationProblem prob = cpb_problem();
    prob.t1_max = 1e-12;
    const OptimizationResult res = optimize_cpb(prob);
    CHECK(res.status == OptimizationStatus::Infeasible);
}

TEST_CASE("flux bands across the allowed linewidths") {
    for (double lw : {5e6, 10e6, 50e6}) {
        const OptimizationResult res = optimize_flux(flux_problem(lw));
        REQUIRE(res.status == OptimizationStatus::Ok);
        CHECK(res.report.eta > 0.85);
        CHECK(res.report.eta < 0.94);
        CHECK(res.report.t1 > 1e-9);
        CHECK(res.report.t1 < 30e-9);
        CHECK(res.co > 1e-15);
        CHECK(res.co < 6e-15);
        // the linewidth constraint binds at the optimum
        CHECK(res.report.gamma2() / (2.0 * pi) == doctest::Approx(lw).epsilon(1e-6));
    }
}

TEST_CASE("flux minimum linewidth at the E_J ceiling") {
    const double lw = flux_min_linewidth_hz(flux_problem(10e6), 250e9);
    CHECK(lw > 2e6);
    CHECK(lw < 3e6);
}

TEST_CASE("relaxing the linewidth pushes E_J to its upper bound") {
    OptimizationProblem prob = flux_problem(1e12);
    const OptimizationResult res = optimize_flux(prob);
    REQUIRE(res.status == OptimizationStatus::Ok);
    CHECK(res.ej_hz == doctest::Approx(prob.ej_max_hz).epsilon(1e-6));
}

TEST_CASE("fabrication envelope") {
    SUBCASE("zero error collapses to a point") {
        const OptimizationResult res = optimize_cpb(cpb_problem());
        const FabricationEnvelope env = fabrication_envelope(cpb_problem(), res, 0.0);
        CHECK(env.eta_min == doctest::Approx(res.report.eta).epsilon(1e-12));
        CHECK(env.eta_max == doctest::Approx(res.report.eta).epsilon(1e-12));
    }
    SUBCASE("CPB width stays within a few percentage points") {
        const OptimizationResult res = optimize_cpb(cpb_problem());
        const FabricationEnvelope env = fabrication_envelope(cpb_problem(), res, 0.10);
        const double width = env.eta_max - env.eta_min;
        CHECK(width > 0.005);
        CHECK(width <= 0.04);
    }
    SUBCASE("flux width stays within a few percentage points") {
        const OptimizationProblem prob = flux_problem(10e6);
        const OptimizationResult res = optimize_flux(prob);
        const FabricationEnvelope env = fabrication_envelope(prob, res, 0.10);
        const double width = env.eta_max - env.eta_min;
        CHECK(width > 0.005);
        CHECK(width <= 0.04);
        CHECK(env.points.size() == 9);
    }
}

TEST_CASE("rise-time sweep is monotone on the feasible region") {
    const std::vector<double> grid{100e-12, 300e-12, 1e-9};
    const auto rows = risetime_sweep(cpb_problem(), grid, 2);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) REQUIRE(r.status == OptimizationStatus::Ok);
    CHECK(rows[0].report.eta > rows[1].report.eta);
    CHECK(rows[1].report.eta > rows[2].report.eta);
    // the 300 ps entry is the published operating point
    CHECK(rows[1].report.eta > 0.886);
    CHECK(rows[1].report.eta < 0.926);
}

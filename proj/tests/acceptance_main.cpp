// Acceptance suite: end-to-end checks of the published operating points and the
// numerical-quality targets. One line per criterion; exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <string>
#include <vector>

#include "lzgen/constants.hpp"
#include "lzgen/dynamics.hpp"
#include "lzgen/lz_analytics.hpp"
#include "lzgen/optimizer.hpp"
#include "lzgen/rates.hpp"

using namespace lzgen;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("CRITERION %d  %-34s  %s  %s\n", id, name, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++g_failures;
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// --- two-level sweep harness ------------------------------------------------

HamiltonianFn lz_fn(double d_hz, double beta) {
    return [d_hz, beta](double t, Eigen::MatrixXcd& h) {
        const double diag = beta * t / (4.0 * pi);
        h.setZero();
        h(0, 0) = diag;
        h(1, 1) = -diag;
        h(0, 1) = 0.5 * d_hz;
        h(1, 0) = 0.5 * d_hz;
    };
}

double lz_numeric(double d_hz, double beta) {
    const double d_angular = 2.0 * pi * d_hz;
    const double t_end = std::max(20.0 * d_angular / beta, 60.0 / std::sqrt(beta));
    const auto fn = lz_fn(d_hz, beta);
    Eigen::MatrixXcd h0(2, 2);
    fn(-t_end, h0);
    SolverOptions opts;
    opts.max_step = 2.0 * t_end / 200.0;
    const SimulationResult r = propagate(
        fn, Drive{2.0 * t_end, [t_end](double t) { return t - t_end; }},
        eigenstate(h0, 0), opts);
    return r.p_excited_final;
}

// --- Appendix-style eight-level sweep harness --------------------------------

constexpr double kEq = 19.27e9;
constexpr double kEj = 1e9;

SimulationResult sweep_run(double t_r, PulseShape shape, ChargeBasis basis = {-3, 4},
                           SolverOptions opts = {}) {
    const auto fn = make_cpb_hamiltonian_fn_from_eq(kEq, kEj, basis);
    const auto h0 = cpb_hamiltonian_from_eq(kEq, kEj, basis, 0.1);
    const PulseSegment seg{shape, 0.1, 0.9, t_r};
    return propagate(fn, make_drive(seg), eigenstate(h0, 0), opts);
}

OptimizationProblem cpb_problem(double n_rms = 0.5e-3) {
    OptimizationProblem prob;
    prob.architecture = Architecture::Cpb;
    prob.cpb.ej_hz = 1e9;
    prob.cpb.cj = 1e-15;
    prob.cpb.cg = 1e-17;
    prob.cpb.co = 2.3e-15;
    prob.cpb.n_rms = n_rms;
    prob.cpb.gamma_nr = 1e6;
    prob.t_r = 300e-12;
    return prob;
}

OptimizationProblem flux_problem(double linewidth_hz) {
    OptimizationProblem prob;
    prob.architecture = Architecture::Flux;
    prob.flux.delta_hz = 1e9;
    prob.flux.alpha = 0.7;
    prob.flux.phi_rms = 1e-5;
    prob.flux.gamma_nr = 2e6;
    prob.t_r = 300e-12;
    prob.linewidth_max_hz = linewidth_hz;
    return prob;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int pairs = 0;
    for (double d_ghz : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        const double d_hz = d_ghz * 1e9;
        const double d_angular = 2.0 * pi * d_hz;
        for (double expo : {0.01, 0.1, 1.0, 10.0}) {
            const double beta = pi * d_angular * d_angular / (2.0 * expo);
            const double analytic = lz_probability({d_hz, beta});
            const double numeric = lz_numeric(d_hz, beta);
            worst = std::max(worst, std::abs(numeric - analytic));
            ++pairs;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, "analytic-numeric LZ agreement", worst <= 1e-3 && secs <= 120.0,
           fmt("%d pairs, max |dP| = %.3e, %.1f s", pairs, worst, secs));
}

void criterion2() {
    const ChargeBasis basis{-3, 4};
    const double dl = diabatic_limit(cpb_hamiltonian_from_eq(kEq, kEj, basis, 0.1),
                                     cpb_hamiltonian_from_eq(kEq, kEj, basis, 0.9));
    const double ceiling = 1.0 - dl;
    const SimulationResult r = sweep_run(1e-12, PulseShape::Linear);
    const double p_ne = 1.0 - r.p_excited_final;
    const bool ok = in_band(ceiling, 0.003, 0.005) && std::abs(p_ne - ceiling) < 5e-4;
    report(2, "diabatic saturation", ok,
           fmt("1 - diabatic_limit = %.5f, P_ne(1 ps) = %.5f", ceiling, p_ne));
}

void criterion3() {
    const double factors[4] = {1.0, 0.4003109638808762, 0.3316849178955768,
                               0.7281913813014701};
    const PulseShape shapes[4] = {PulseShape::Linear, PulseShape::GaussianRise,
                                  PulseShape::TanhRise, PulseShape::ExponentialRise};
    double worst = 0.0;
    for (double t_eff : {50e-12, 200e-12, 1e-9, 5e-9}) {
        double lo = 2.0, hi = -1.0;
        for (int k = 0; k < 4; ++k) {
            const SimulationResult r = sweep_run(t_eff / factors[k], shapes[k]);
            lo = std::min(lo, r.p_excited_final);
            hi = std::max(hi, r.p_excited_final);
        }
        worst = std::max(worst, hi - lo);
    }
    report(3, "effective-rise-time collapse", worst <= 5e-3,
           fmt("max spread across shapes = %.2e", worst));
}

void criterion4() {
    const auto pts =
        leakage_scan_risetime(kEq, kEj, {-3, 4}, PulseShape::Linear, 0.1, 0.9,
                              {0.5e-12, 1e-12, 100e-12, 1e-9}, {}, 2);
    bool ok = true;
    for (const auto& p : pts) ok = ok && p.error.empty();
    const bool slow_ok = ok && pts[2].leakage <= 1e-5 && pts[3].leakage <= 1e-5;
    const bool fast_ok = ok && in_band(pts[0].leakage, 0.5e-4, 3e-4) &&
                         in_band(pts[1].leakage, 0.5e-4, 3e-4);
    report(4, "leakage saturation and floor", slow_ok && fast_ok,
           fmt("L(0.5ps) = %.2e, L(1ps) = %.2e, L(100ps) = %.2e, L(1ns) = %.2e",
               pts[0].leakage, pts[1].leakage, pts[2].leakage, pts[3].leakage));
}

OptimizationResult g_cpb_opt;    // reused by later criteria
OptimizationResult g_flux_opt5;  // L_m/2pi = 5 MHz design

void criterion5() {
    g_cpb_opt = optimize_cpb(cpb_problem());
    const auto& r = g_cpb_opt;
    const bool ok = r.status == OptimizationStatus::Ok &&
                    in_band(r.report.eta, 0.906 - 0.02, 0.906 + 0.02) &&
                    in_band(r.co, 1.8e-15, 2.8e-15) &&
                    in_band(r.report.t1, 28.8e-9, 38.8e-9) &&
                    in_band(r.report.rep_rate_hz, 4.9e6, 6.9e6);
    report(5, "CPB operating point", ok,
           fmt("eta = %.4f, C_o = %.3f fF, T1 = %.2f ns, rep = %.2f MHz", r.report.eta,
               r.co * 1e15, r.report.t1 * 1e9, r.report.rep_rate_hz / 1e6));
}

void criterion6() {
    bool ok = true;
    std::string detail;
    for (double lw : {5e6, 10e6, 50e6}) {
        const OptimizationResult r = optimize_flux(flux_problem(lw));
        if (lw == 5e6) g_flux_opt5 = r;
        const bool point_ok = r.status == OptimizationStatus::Ok &&
                              in_band(r.report.eta, 0.85, 0.94) &&
                              in_band(r.report.t1, 1e-9, 30e-9) &&
                              in_band(r.co, 1e-15, 6e-15);
        ok = ok && point_ok;
        detail += fmt("[%.0fMHz: eta=%.3f T1=%.2fns Co=%.2ffF] ", lw / 1e6, r.report.eta,
                      r.report.t1 * 1e9, r.co * 1e15);
    }
    const double min_lw = flux_min_linewidth_hz(flux_problem(10e6), 250e9);
    ok = ok && in_band(min_lw, 2e6, 3e6);
    detail += fmt("min_lw = %.2f MHz", min_lw / 1e6);
    report(6, "flux operating bands", ok, detail);
}

void criterion7() {
    const FabricationEnvelope cpb_env =
        fabrication_envelope(cpb_problem(), g_cpb_opt, 0.10);
    const OptimizationProblem fprob = flux_problem(10e6);
    const OptimizationResult fres = optimize_flux(fprob);
    const FabricationEnvelope flux_env = fabrication_envelope(fprob, fres, 0.10);
    const double w_cpb = cpb_env.eta_max - cpb_env.eta_min;
    const double w_flux = flux_env.eta_max - flux_env.eta_min;
    report(7, "fabrication envelope", w_cpb <= 0.04 && w_flux <= 0.04,
           fmt("CPB width = %.2f pp, flux width = %.2f pp", w_cpb * 100, w_flux * 100));
}

void criterion8() {
    const OptimizationProblem cprob = cpb_problem();
    const double omega = 2.0 * pi * 6e9;
    const double gamma = 1e7;  // cancels in the ratio
    const double cpb_tri = spectral_leakage_cpb(SpectralPulse::Triangle, cprob.cpb, 300e-12,
                                                0.0, omega, gamma, 1.0);
    const double period = 5.0 * g_flux_opt5.report.t1;
    const double flux_trap = spectral_leakage_flux(
        SpectralPulse::Trapezoid, flux_problem(5e6).flux, 300e-12, period, omega, gamma, 1.0);
    const bool ok = in_band(cpb_tri, 0.04, 0.10) && in_band(flux_trap, 0.6, 1.3);
    report(8, "spectral pulse leakage", ok,
           fmt("CPB triangle = %.4f (band 0.04..0.10), flux trapezoid = %.3f "
               "(band 0.6..1.3, T = 5 T1 = %.1f ns)",
               cpb_tri, flux_trap, period * 1e9));
}

void criterion9() {
    // unitarity
    const SimulationResult r1 = sweep_run(1e-9, PulseShape::Linear);
    const bool unitary = r1.norm_drift <= 1e-9;

    // basis enlargement
    SolverOptions tight;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    const SimulationResult small = sweep_run(1e-9, PulseShape::Linear, {-3, 4}, tight);
    const SimulationResult big = sweep_run(1e-9, PulseShape::Linear, {-5, 6}, tight);
    const double basis_rel =
        std::abs(small.p_excited_final - big.p_excited_final) / big.p_excited_final;

    // hermiticity of built Hamiltonians
    bool hermitian = true;
    CpbParams cp = cpb_problem().cpb;
    for (double ng : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0})
        hermitian = hermitian && is_hermitian(cpb_hamiltonian(cp, {-3, 4}, ng), 1e-12);
    FluxParams fp = flux_problem(10e6).flux;
    for (double d : {-0.1, 0.0, 0.05})
        hermitian = hermitian && is_hermitian(flux_hamiltonian(fp, d), 1e-12);

    // optimizer determinism, bit-exact
    const OptimizationResult a = optimize_cpb(cpb_problem());
    const OptimizationResult b = optimize_cpb(cpb_problem());
    const bool deterministic =
        std::memcmp(&a.co, &b.co, sizeof a.co) == 0 &&
        std::memcmp(&a.report.eta, &b.report.eta, sizeof a.report.eta) == 0 &&
        std::memcmp(&a.report.t1, &b.report.t1, sizeof a.report.t1) == 0;

    // catapult middle-segment slew invariance
    bool slew_ok = true;
    for (double ci : {-0.45, -0.1, 0.0, 0.3})
        for (double cf : {-0.2, 0.0, 0.25, 0.45}) {
            const auto seq = catapult(ci, cf, 1.0, 250e-12);
            const auto& mid = seq.segments[1];
            slew_ok = slew_ok && std::abs((mid.chi_end - mid.chi_start) / mid.t_r -
                                          1.0 / 250e-12) < 1e-3 / 250e-12 * 1e-9;
        }

    const bool ok = unitary && basis_rel <= 1e-9 && hermitian && deterministic && slew_ok;
    report(9, "property suite", ok,
           fmt("norm_drift = %.1e, basis_rel = %.1e, hermitian = %d, deterministic = %d, "
               "slew = %d",
               r1.norm_drift, basis_rel, hermitian ? 1 : 0, deterministic ? 1 : 0,
               slew_ok ? 1 : 0));
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures > 0)
        std::printf("%d criterion(s) failed\n", g_failures);
    else
        std::printf("all criteria passed\n");
    return g_failures;
}

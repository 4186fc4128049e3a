// optimizer.hpp — constrained maximization of usable efficiency over C_o (CPB) and
// (C_o, E_J) (flux), fabrication-uncertainty envelopes, and rise-time sweeps

#pragma once

#include <vector>

#include "lzgen/rates.hpp"

namespace lzgen {

enum class Architecture { Cpb, Flux };

// linewidth_max_hz bounds the total coherence rate quoted in cyclic units,
// Gamma_2 / 2 pi <= linewidth_max_hz (the L_m/2pi convention of the device tables).
// For the CPB a value of 0 selects the proximity rule instead: Gamma_2 within
// (1 + lw_proximity_delta) of the minimum achievable over C_o.
struct OptimizationProblem {
    Architecture architecture = Architecture::Cpb;
    CpbParams cpb{};
    FluxParams flux{};
    double t_r = 300e-12;
    double t1_max = 200e-9;
    double linewidth_max_hz = 0.0;
    double lw_proximity_delta = 0.25;
    double co_min = 0.1e-15;
    double co_max = 50e-15;
    double ej_min_hz = 1e9;
    double ej_max_hz = 250e9;
    double emission_freq_hz = 6e9;
    // control sweep spans: the catapult traverses the full range in t_r
    double cpb_sweep_range_ng = 1.0;
    double flux_sweep_range_phi0 = 0.0;  // <= 0 selects 2 x flux.sweep_halfrange_phi0
    int grid_points = 200;

    void validate() const;
    double lambda_rate() const { return cpb_sweep_range_ng / t_r; }
    // full-range flux sweep rate in Phi0 per second (the rate convention the
    // reported efficiency tables correspond to)
    double mu_rate() const;
};

enum class OptimizationStatus { Ok, Infeasible };

struct TracePoint {
    double co = 0.0;
    double ej_hz = 0.0;
    double eta = 0.0;
    double t1 = 0.0;
    double fwhm_hz = 0.0;
    bool feasible = false;
};

struct OptimizationResult {
    OptimizationStatus status = OptimizationStatus::Infeasible;
    Architecture architecture = Architecture::Cpb;
    double t_r = 0.0;
    double co = 0.0;
    double ej_hz = 0.0;
    EfficiencyReport report{};
    double t1_slack = 0.0;            // t1_max - t1
    double linewidth_slack_hz = 0.0;  // allowed quote - Gamma_2/2pi
    std::vector<TracePoint> trace;
};

OptimizationResult optimize_cpb(const OptimizationProblem& prob);
OptimizationResult optimize_flux(const OptimizationProblem& prob);
OptimizationResult optimize(const OptimizationProblem& prob);

struct FabricationPoint {
    double co = 0.0;
    double ej_hz = 0.0;
    double eta = 0.0;
    bool feasible = false;
};

// Efficiency range over the +-rel_err box around the optimized (C_o, E_J):
// corners and axis midpoints, constraints re-checked but not re-optimized.
struct FabricationEnvelope {
    double eta_min = 0.0;
    double eta_max = 0.0;
    std::vector<FabricationPoint> points;
};

FabricationEnvelope fabrication_envelope(const OptimizationProblem& prob,
                                         const OptimizationResult& result,
                                         double rel_err = 0.10);

// Independent optimizations per rise time, in grid order.
std::vector<OptimizationResult> risetime_sweep(const OptimizationProblem& prob,
                                               const std::vector<double>& t_r_grid,
                                               unsigned threads = 1);

// Minimum achievable linewidth quote (Gamma_2/2pi, Hz) at fixed E_J over the
// feasible C_o range, honoring the repetition-rate constraint T1 <= t1_max.
double flux_min_linewidth_hz(const OptimizationProblem& prob, double ej_hz);

} // namespace lzgen

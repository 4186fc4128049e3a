// io.hpp — run configuration, CSV/JSON emission, and the command entry points
// used by the CLI

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lzgen/dynamics.hpp"
#include "lzgen/optimizer.hpp"

namespace lzgen {

// Parsed run configuration. The raw (comment-stripped) JSON is kept for the
// config snapshot embedded in every summary, so a run can be reproduced from
// its own outputs.
struct RunConfig {
    Architecture architecture = Architecture::Cpb;
    CpbParams cpb{};
    FluxParams flux{};
    bool has_eq = false;     // CPB charging energy stated directly
    double eq_hz = 0.0;
    ChargeBasis basis{};

    std::string pulse_kind = "segment";  // "segment" | "catapult"
    PulseShape shape = PulseShape::Linear;
    double chi_start = 0.1;
    double chi_end = 0.9;
    double chi_i = 0.0;
    double chi_f = 0.0;
    double chi_0 = 1.0;
    double rho = 1.0;
    double t_r = 1e-9;

    SolverOptions solver{};

    // sweep section
    std::string sweep_axis;  // "t_r" | "ng_min" | "shape"
    double sweep_min = 0.0;
    double sweep_max = 0.0;
    int sweep_points = 0;
    bool sweep_log = true;
    std::vector<PulseShape> sweep_shapes;
    double chi_crossing = 0.5;

    bool has_optimization = false;
    OptimizationProblem opt{};
    double fab_rel_err = 0.10;
    std::vector<double> risetime_grid;

    // spectrum section
    double spec_beta_c = 1.0;
    double spec_gamma_linewidth = 1e7;  // rad/s; cancels in the leakage ratio
    double spec_period = 0.0;           // trapezoid period; 0 derives 5 x t1_s
    double spec_t1 = 0.0;
    SincEval spec_eval = SincEval::Envelope;

    nlohmann::json raw;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

std::string format_g17(double v);

nlohmann::json to_json(const EfficiencyReport& rep);
nlohmann::json to_json(const OptimizationResult& res);

// Command implementations; each writes its outputs under out_dir (created if
// missing) along with a config.json snapshot.
void run_simulate(const RunConfig& cfg, const std::string& out_dir, unsigned threads);
void run_catapult(const RunConfig& cfg, const std::string& out_dir, unsigned threads);
void run_sweep(const RunConfig& cfg, const std::string& out_dir, unsigned threads);
void run_leakage(const RunConfig& cfg, const std::string& out_dir, unsigned threads);
void run_optimize(const RunConfig& cfg, const std::string& out_dir, unsigned threads);
void run_spectrum(const RunConfig& cfg, const std::string& out_dir, unsigned threads);

} // namespace lzgen

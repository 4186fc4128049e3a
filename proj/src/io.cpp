#include "lzgen/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lzgen/constants.hpp"
#include "lzgen/lz_analytics.hpp"
#include "lzgen/parallel.hpp"

namespace lzgen {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void check_keys(const json& j, const std::string& section,
                const std::set<std::string>& allowed) {
    if (!j.is_object())
        throw ValidationError("config: section '" + section + "' must be an object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key))
            throw ValidationError("config: unknown key '" + section + "." + key + "'");
    }
}

double get_num(const json& j, const std::string& section, const std::string& key,
               double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw ValidationError("config: " + section + "." + key + " must be a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& section, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer())
        throw ValidationError("config: " + section + "." + key + " must be an integer");
    return j.at(key).get<int>();
}

std::string get_str(const json& j, const std::string& section, const std::string& key,
                    const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string())
        throw ValidationError("config: " + section + "." + key + " must be a string");
    return j.at(key).get<std::string>();
}

void parse_device(const json& j, RunConfig& cfg) {
    if (cfg.architecture == Architecture::Cpb) {
        check_keys(j, "device",
                   {"ej_hz", "cj_f", "cg_f", "co_f", "r_env_ohm", "n_rms", "gamma_nr_per_s",
                    "km_hz", "beta_coeff_hz_f", "eq_hz"});
        CpbParams& p = cfg.cpb;
        p.ej_hz = get_num(j, "device", "ej_hz", p.ej_hz);
        p.cj = get_num(j, "device", "cj_f", p.cj);
        p.cg = get_num(j, "device", "cg_f", p.cg);
        p.co = get_num(j, "device", "co_f", p.co);
        p.r_env = get_num(j, "device", "r_env_ohm", p.r_env);
        p.n_rms = get_num(j, "device", "n_rms", p.n_rms);
        p.gamma_nr = get_num(j, "device", "gamma_nr_per_s", p.gamma_nr);
        p.km_hz = get_num(j, "device", "km_hz", p.km_hz);
        p.beta_coeff_hz_f = get_num(j, "device", "beta_coeff_hz_f", p.beta_coeff_hz_f);
        p.validate();
        if (j.contains("eq_hz")) {
            cfg.has_eq = true;
            cfg.eq_hz = get_num(j, "device", "eq_hz", 0.0);
            if (!(cfg.eq_hz > 0)) throw ValidationError("config: device.eq_hz must be > 0");
        }
    } else {
        check_keys(j, "device",
                   {"ej_hz", "delta_hz", "alpha", "co_f", "m_h", "phi_rms_phi0",
                    "gamma_nr_per_s", "z_env_ohm", "sweep_halfrange_phi0"});
        FluxParams& p = cfg.flux;
        p.ej_hz = get_num(j, "device", "ej_hz", p.ej_hz);
        p.delta_hz = get_num(j, "device", "delta_hz", p.delta_hz);
        p.alpha = get_num(j, "device", "alpha", p.alpha);
        p.co = get_num(j, "device", "co_f", p.co);
        p.m_coupling = get_num(j, "device", "m_h", p.m_coupling);
        p.phi_rms = get_num(j, "device", "phi_rms_phi0", p.phi_rms);
        p.gamma_nr = get_num(j, "device", "gamma_nr_per_s", p.gamma_nr);
        p.z_env = get_num(j, "device", "z_env_ohm", p.z_env);
        p.sweep_halfrange_phi0 =
            get_num(j, "device", "sweep_halfrange_phi0", p.sweep_halfrange_phi0);
        p.validate();
    }
}

void parse_pulse(const json& j, RunConfig& cfg) {
    check_keys(j, "pulse",
               {"kind", "shape", "chi_start", "chi_end", "chi_i", "chi_f", "chi_0", "rho",
                "t_r_s"});
    cfg.pulse_kind = get_str(j, "pulse", "kind", cfg.pulse_kind);
    if (cfg.pulse_kind != "segment" && cfg.pulse_kind != "catapult")
        throw ValidationError("config: pulse.kind must be 'segment' or 'catapult'");
    cfg.shape = pulse_shape_from_string(get_str(j, "pulse", "shape", to_string(cfg.shape)));
    cfg.chi_start = get_num(j, "pulse", "chi_start", cfg.chi_start);
    cfg.chi_end = get_num(j, "pulse", "chi_end", cfg.chi_end);
    cfg.chi_i = get_num(j, "pulse", "chi_i", cfg.chi_i);
    cfg.chi_f = get_num(j, "pulse", "chi_f", cfg.chi_f);
    cfg.chi_0 = get_num(j, "pulse", "chi_0", cfg.chi_0);
    cfg.rho = get_num(j, "pulse", "rho", cfg.rho);
    cfg.t_r = get_num(j, "pulse", "t_r_s", cfg.t_r);
    if (!(cfg.t_r > 0)) throw ValidationError("config: pulse.t_r_s must be > 0");
    if (cfg.architecture == Architecture::Flux) {
        const double half = cfg.flux.sweep_halfrange_phi0;
        const double reach = cfg.pulse_kind == "catapult"
                                 ? 0.5 * cfg.chi_0
                                 : std::max(std::abs(cfg.chi_start), std::abs(cfg.chi_end));
        if (reach > half)
            std::fprintf(stderr,
                         "warning: flux sweep reaches %.4g Phi0, beyond the stated "
                         "single-step half-range %.4g Phi0\n",
                         reach, half);
    }
}

void parse_solver(const json& j, RunConfig& cfg) {
    check_keys(j, "solver", {"method", "rel_tol", "abs_tol", "max_step_s", "samples"});
    const std::string m = get_str(j, "solver", "method", "dp54");
    if (m == "dp54") cfg.solver.method = SolverMethod::AdaptiveDp54;
    else if (m == "rk4") cfg.solver.method = SolverMethod::Rk4Fixed;
    else throw ValidationError("config: solver.method must be 'dp54' or 'rk4'");
    cfg.solver.rel_tol = get_num(j, "solver", "rel_tol", cfg.solver.rel_tol);
    cfg.solver.abs_tol = get_num(j, "solver", "abs_tol", cfg.solver.abs_tol);
    cfg.solver.max_step = get_num(j, "solver", "max_step_s", cfg.solver.max_step);
    cfg.solver.samples = get_int(j, "solver", "samples", cfg.solver.samples);
    cfg.solver.validate();
}

void parse_sweep(const json& j, RunConfig& cfg) {
    check_keys(j, "sweep",
               {"axis", "min", "max", "points", "log", "shapes", "chi_crossing"});
    cfg.sweep_axis = get_str(j, "sweep", "axis", "");
    if (cfg.sweep_axis != "t_r" && cfg.sweep_axis != "ng_min" && cfg.sweep_axis != "shape")
        throw ValidationError("config: sweep.axis must be 't_r', 'ng_min' or 'shape'");
    cfg.sweep_min = get_num(j, "sweep", "min", 0.0);
    cfg.sweep_max = get_num(j, "sweep", "max", 0.0);
    cfg.sweep_points = get_int(j, "sweep", "points", 0);
    if (j.contains("log")) {
        if (!j.at("log").is_boolean())
            throw ValidationError("config: sweep.log must be a boolean");
        cfg.sweep_log = j.at("log").get<bool>();
    }
    cfg.chi_crossing = get_num(j, "sweep", "chi_crossing",
                               cfg.architecture == Architecture::Cpb ? 0.5 : 0.0);
    if (j.contains("shapes")) {
        if (!j.at("shapes").is_array())
            throw ValidationError("config: sweep.shapes must be an array");
        for (const auto& s : j.at("shapes"))
            cfg.sweep_shapes.push_back(pulse_shape_from_string(s.get<std::string>()));
    }
    if (cfg.sweep_axis != "shape") {
        if (cfg.sweep_points < 1)
            throw ValidationError("config: sweep.points must be >= 1");
        if (!(cfg.sweep_min > 0) || !(cfg.sweep_max >= cfg.sweep_min))
            throw ValidationError("config: sweep.min/max must satisfy 0 < min <= max");
    }
}

void parse_optimization(const json& j, RunConfig& cfg) {
    check_keys(j, "optimization",
               {"t_r_s", "t1_max_s", "linewidth_max_hz", "lw_proximity_delta", "co_min_f",
                "co_max_f", "ej_min_hz", "ej_max_hz", "emission_freq_hz",
                "cpb_sweep_range_ng", "flux_sweep_range_phi0", "grid_points", "fab_rel_err",
                "risetime_grid_s"});
    cfg.has_optimization = true;
    OptimizationProblem& o = cfg.opt;
    o.architecture = cfg.architecture;
    o.cpb = cfg.cpb;
    o.flux = cfg.flux;
    o.t_r = get_num(j, "optimization", "t_r_s", o.t_r);
    o.t1_max = get_num(j, "optimization", "t1_max_s", o.t1_max);
    o.linewidth_max_hz = get_num(j, "optimization", "linewidth_max_hz", o.linewidth_max_hz);
    o.lw_proximity_delta =
        get_num(j, "optimization", "lw_proximity_delta", o.lw_proximity_delta);
    o.co_min = get_num(j, "optimization", "co_min_f", o.co_min);
    o.co_max = get_num(j, "optimization", "co_max_f", o.co_max);
    o.ej_min_hz = get_num(j, "optimization", "ej_min_hz", o.ej_min_hz);
    o.ej_max_hz = get_num(j, "optimization", "ej_max_hz", o.ej_max_hz);
    o.emission_freq_hz = get_num(j, "optimization", "emission_freq_hz", o.emission_freq_hz);
    o.cpb_sweep_range_ng = get_num(j, "optimization", "cpb_sweep_range_ng", o.cpb_sweep_range_ng);
    o.flux_sweep_range_phi0 =
        get_num(j, "optimization", "flux_sweep_range_phi0", o.flux_sweep_range_phi0);
    o.grid_points = get_int(j, "optimization", "grid_points", o.grid_points);
    cfg.fab_rel_err = get_num(j, "optimization", "fab_rel_err", cfg.fab_rel_err);
    if (j.contains("risetime_grid_s")) {
        if (!j.at("risetime_grid_s").is_array())
            throw ValidationError("config: optimization.risetime_grid_s must be an array");
        for (const auto& v : j.at("risetime_grid_s"))
            cfg.risetime_grid.push_back(v.get<double>());
    }
    o.validate();
}

void parse_spectrum(const json& j, RunConfig& cfg) {
    check_keys(j, "spectrum",
               {"beta_c", "gamma_linewidth_rad_s", "period_s", "t1_s", "eval"});
    cfg.spec_beta_c = get_num(j, "spectrum", "beta_c", cfg.spec_beta_c);
    cfg.spec_gamma_linewidth =
        get_num(j, "spectrum", "gamma_linewidth_rad_s", cfg.spec_gamma_linewidth);
    cfg.spec_period = get_num(j, "spectrum", "period_s", cfg.spec_period);
    cfg.spec_t1 = get_num(j, "spectrum", "t1_s", cfg.spec_t1);
    const std::string ev = get_str(j, "spectrum", "eval", "envelope");
    if (ev == "envelope") cfg.spec_eval = SincEval::Envelope;
    else if (ev == "exact") cfg.spec_eval = SincEval::Exact;
    else throw ValidationError("config: spectrum.eval must be 'envelope' or 'exact'");
}

} // namespace

RunConfig parse_config(const json& j) {
    check_keys(j, "(root)",
               {"architecture", "device", "basis", "pulse", "solver", "sweep",
                "optimization", "spectrum"});
    RunConfig cfg;
    cfg.raw = j;
    const std::string arch = get_str(j, "(root)", "architecture", "");
    if (arch == "cpb") cfg.architecture = Architecture::Cpb;
    else if (arch == "flux") cfg.architecture = Architecture::Flux;
    else throw ValidationError("config: architecture must be 'cpb' or 'flux'");
    if (j.contains("device")) parse_device(j.at("device"), cfg);
    if (j.contains("basis")) {
        check_keys(j.at("basis"), "basis", {"n_min", "n_max"});
        cfg.basis.n_min = get_int(j.at("basis"), "basis", "n_min", cfg.basis.n_min);
        cfg.basis.n_max = get_int(j.at("basis"), "basis", "n_max", cfg.basis.n_max);
        cfg.basis.validate();
    }
    if (j.contains("pulse")) parse_pulse(j.at("pulse"), cfg);
    if (j.contains("solver")) parse_solver(j.at("solver"), cfg);
    if (j.contains("sweep")) parse_sweep(j.at("sweep"), cfg);
    if (j.contains("optimization")) parse_optimization(j.at("optimization"), cfg);
    if (j.contains("spectrum")) parse_spectrum(j.at("spectrum"), cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open " + path);
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const EfficiencyReport& rep) {
    return json{{"p_ex", rep.p_ex},
                {"gamma_o_per_s", rep.gamma_o},
                {"gamma_other_per_s", rep.gamma_other},
                {"gamma_nr_per_s", rep.gamma_nr},
                {"eta", rep.eta},
                {"t1_s", rep.t1},
                {"gamma_phi_per_s", rep.gamma_phi},
                {"fwhm_hz", rep.fwhm_hz},
                {"linewidth_quote_hz", rep.gamma2() / (2.0 * pi)},
                {"rep_rate_hz", rep.rep_rate_hz}};
}

json to_json(const OptimizationResult& res) {
    json j{{"status", res.status == OptimizationStatus::Ok ? "ok" : "infeasible"},
           {"architecture", res.architecture == Architecture::Cpb ? "cpb" : "flux"},
           {"t_r_s", res.t_r}};
    if (res.status == OptimizationStatus::Ok) {
        j["co_f"] = res.co;
        j["ej_hz"] = res.ej_hz;
        j["report"] = to_json(res.report);
        j["t1_slack_s"] = res.t1_slack;
        j["linewidth_slack_hz"] = res.linewidth_slack_hz;
    }
    return j;
}

namespace {

std::ofstream open_out(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    const fs::path p = fs::path(out_dir) / name;
    std::ofstream f(p);
    if (!f) throw ValidationError("cannot open output file " + p.string());
    return f;
}

void write_csv_row(std::ofstream& f, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) f << ',';
        f << cells[i];
    }
    f << '\n';
}

void snapshot_config(const RunConfig& cfg, const std::string& out_dir) {
    auto f = open_out(out_dir, "config.json");
    f << cfg.raw.dump(2) << '\n';
}

// Hamiltonian and drive assembly shared by simulate/catapult. For the CPB the
// segment control coordinate is n_g itself; the catapult coordinate is centered
// at the crossing, chi = n_g - 0.5. Flux uses dphi_e for both.
struct Assembled {
    HamiltonianFn h_fn;
    Drive drive;
    HermitianMatrix h_initial;
    HermitianMatrix h_final;
};

Assembled assemble(const RunConfig& cfg) {
    Assembled a;
    const bool is_catapult = cfg.pulse_kind == "catapult";
    double chi0_val = 0.0, chi1_val = 0.0;
    if (is_catapult) {
        const CatapultSequence seq =
            catapult(cfg.chi_i, cfg.chi_f, cfg.chi_0, cfg.t_r, cfg.shape, cfg.rho);
        a.drive = make_drive(seq);
        chi0_val = seq.value(0.0);
        chi1_val = seq.value(seq.duration());
    } else {
        const PulseSegment seg{cfg.shape, cfg.chi_start, cfg.chi_end, cfg.t_r};
        a.drive = make_drive(seg);
        chi0_val = cfg.chi_start;
        chi1_val = cfg.chi_end;
    }
    if (cfg.architecture == Architecture::Cpb) {
        const double eq =
            cfg.has_eq ? cfg.eq_hz : cpb_charging_energy_hz(cfg.cpb);
        const double offset = is_catapult ? 0.5 : 0.0;  // chi -> n_g
        const auto base = make_cpb_hamiltonian_fn_from_eq(eq, cfg.cpb.ej_hz, cfg.basis);
        a.h_fn = [base, offset](double chi, Eigen::MatrixXcd& h) { base(chi + offset, h); };
        a.h_initial = cpb_hamiltonian_from_eq(eq, cfg.cpb.ej_hz, cfg.basis, chi0_val + offset);
        a.h_final = cpb_hamiltonian_from_eq(eq, cfg.cpb.ej_hz, cfg.basis, chi1_val + offset);
    } else {
        a.h_fn = make_flux_hamiltonian_fn(cfg.flux);
        a.h_initial = flux_hamiltonian(cfg.flux, chi0_val);
        a.h_final = flux_hamiltonian(cfg.flux, chi1_val);
    }
    return a;
}

} // namespace

void run_simulate(const RunConfig& cfg, const std::string& out_dir, unsigned /*threads*/) {
    snapshot_config(cfg, out_dir);
    const Assembled a = assemble(cfg);
    const StateVector psi0 = eigenstate(a.h_initial, 0);
    const SimulationResult r = propagate(a.h_fn, a.drive, psi0, cfg.solver);

    auto csv = open_out(out_dir, "timeseries.csv");
    write_csv_row(csv, {"t_s", "chi", "p_ground", "p_excited", "leakage"});
    for (size_t i = 0; i < r.times.size(); ++i) {
        const double pg = r.populations(static_cast<Eigen::Index>(i), 0);
        const double pe = r.populations(static_cast<Eigen::Index>(i), 1);
        write_csv_row(csv, {format_g17(r.times[i]), format_g17(a.drive.chi(r.times[i])),
                            format_g17(pg), format_g17(pe), format_g17(1.0 - pg - pe)});
    }

    json summary{{"config", cfg.raw},
                 {"results",
                  {{"p_excited_final", r.p_excited_final},
                   {"p_ground_final", r.p_ground_final},
                   {"leakage_final", r.leakage_final},
                   {"norm_drift", r.norm_drift},
                   {"diabatic_limit", diabatic_limit(a.h_initial, a.h_final)}}}};
    auto js = open_out(out_dir, "summary.json");
    js << summary.dump(2) << '\n';
}

void run_catapult(const RunConfig& cfg, const std::string& out_dir, unsigned /*threads*/) {
    snapshot_config(cfg, out_dir);
    const CatapultSequence seq =
        catapult(cfg.chi_i, cfg.chi_f, cfg.chi_0, cfg.t_r, cfg.shape, cfg.rho);
    auto csv = open_out(out_dir, "trajectory.csv");
    write_csv_row(csv, {"t_s", "chi"});
    const int n = std::max(cfg.solver.samples, 2);
    for (int i = 0; i < n; ++i) {
        const double t = seq.duration() * static_cast<double>(i) / (n - 1);
        write_csv_row(csv, {format_g17(t), format_g17(seq.value(t))});
    }
    json summary{{"config", cfg.raw},
                 {"results",
                  {{"duration_s", seq.duration()},
                   {"middle_slew_per_s",
                    (seq.segments[1].chi_end - seq.segments[1].chi_start) / seq.t_r}}}};
    auto js = open_out(out_dir, "summary.json");
    js << summary.dump(2) << '\n';
}

namespace {

struct SweepRow {
    std::string shape;
    double x = 0.0;
    double t_r_eff = 0.0;
    double p_excited = 0.0;
    double leakage = 0.0;
    double norm_drift = 0.0;
    std::string error;
};

SweepRow sweep_point(const RunConfig& cfg, PulseShape shape, double t_r, double chi_a,
                     double chi_b, double x_value) {
    SweepRow row;
    row.shape = to_string(shape);
    row.x = x_value;
    try {
        RunConfig one = cfg;
        one.pulse_kind = "segment";
        one.shape = shape;
        one.chi_start = chi_a;
        one.chi_end = chi_b;
        one.t_r = t_r;
        const Assembled a = assemble(one);
        const PulseSegment seg{shape, chi_a, chi_b, t_r};
        row.t_r_eff = effective_rise_time(seg, cfg.chi_crossing);
        const StateVector psi0 = eigenstate(a.h_initial, 0);
        const SimulationResult r = propagate(a.h_fn, a.drive, psi0, one.solver);
        row.p_excited = r.p_excited_final;
        row.leakage = r.leakage_final;
        row.norm_drift = r.norm_drift;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
    std::vector<double> g(static_cast<size_t>(cfg.sweep_points));
    if (cfg.sweep_points == 1) {
        g[0] = cfg.sweep_min;
        return g;
    }
    for (int i = 0; i < cfg.sweep_points; ++i) {
        const double f = static_cast<double>(i) / (cfg.sweep_points - 1);
        g[static_cast<size_t>(i)] =
            cfg.sweep_log ? cfg.sweep_min * std::pow(cfg.sweep_max / cfg.sweep_min, f)
                          : cfg.sweep_min + f * (cfg.sweep_max - cfg.sweep_min);
    }
    return g;
}

void finish_sweep(const std::vector<SweepRow>& rows, const std::string& out_dir,
                  const std::string& filename) {
    auto csv = open_out(out_dir, filename);
    write_csv_row(csv, {"shape", "x", "t_r_eff_s", "p_excited", "p_not_excited", "leakage",
                        "norm_drift", "error"});
    size_t failures = 0;
    for (const auto& r : rows) {
        write_csv_row(csv, {r.shape, format_g17(r.x), format_g17(r.t_r_eff),
                            format_g17(r.p_excited), format_g17(1.0 - r.p_excited),
                            format_g17(r.leakage), format_g17(r.norm_drift), r.error});
        if (!r.error.empty()) ++failures;
    }
    if (failures > 0)
        throw SolverError(std::to_string(failures) + " sweep point(s) failed; see " +
                          filename);
}

} // namespace

void run_sweep(const RunConfig& cfg, const std::string& out_dir, unsigned threads) {
    if (cfg.sweep_axis.empty())
        throw ValidationError("config: sweep section required for the sweep command");
    snapshot_config(cfg, out_dir);
    std::vector<PulseShape> shapes = cfg.sweep_shapes;
    if (shapes.empty())
        shapes = {PulseShape::Linear, PulseShape::GaussianRise, PulseShape::TanhRise,
                  PulseShape::ExponentialRise};

    std::vector<SweepRow> rows;
    if (cfg.sweep_axis == "t_r") {
        const auto grid = sweep_grid(cfg);
        std::vector<std::pair<PulseShape, double>> jobs;
        for (const auto s : shapes)
            for (const double tr : grid) jobs.emplace_back(s, tr);
        rows = parallel_map(jobs.size(), threads, [&](std::size_t i) {
            return sweep_point(cfg, jobs[i].first, jobs[i].second, cfg.chi_start, cfg.chi_end,
                               jobs[i].second);
        });
    } else if (cfg.sweep_axis == "ng_min") {
        const auto grid = sweep_grid(cfg);
        rows = parallel_map(grid.size(), threads, [&](std::size_t i) {
            return sweep_point(cfg, cfg.shape, cfg.t_r, grid[i], 1.0 - grid[i], grid[i]);
        });
    } else {  // shape axis
        rows = parallel_map(shapes.size(), threads, [&](std::size_t i) {
            return sweep_point(cfg, shapes[i], cfg.t_r, cfg.chi_start, cfg.chi_end,
                               static_cast<double>(i));
        });
    }
    finish_sweep(rows, out_dir, "sweep.csv");
}

void run_leakage(const RunConfig& cfg, const std::string& out_dir, unsigned threads) {
    if (cfg.architecture != Architecture::Cpb)
        throw ValidationError("leakage command: cpb architecture required");
    if (cfg.sweep_axis.empty())
        throw ValidationError("config: sweep section required for the leakage command");
    snapshot_config(cfg, out_dir);
    const double eq = cfg.has_eq ? cfg.eq_hz : cpb_charging_energy_hz(cfg.cpb);
    const auto grid = sweep_grid(cfg);
    std::vector<ScanPoint> pts;
    std::string filename;
    if (cfg.sweep_axis == "t_r") {
        pts = leakage_scan_risetime(eq, cfg.cpb.ej_hz, cfg.basis, cfg.shape, cfg.chi_start,
                                    cfg.chi_end, grid, cfg.solver, threads);
        filename = "leakage_vs_risetime.csv";
    } else if (cfg.sweep_axis == "ng_min") {
        pts = leakage_scan_range(eq, cfg.cpb.ej_hz, cfg.basis, cfg.shape, cfg.t_r, grid,
                                 cfg.solver, threads);
        filename = "leakage_vs_range.csv";
    } else {
        throw ValidationError("leakage command: sweep.axis must be 't_r' or 'ng_min'");
    }
    auto csv = open_out(out_dir, filename);
    write_csv_row(csv, {"x", "p_excited", "p_not_excited", "leakage", "norm_drift", "error"});
    size_t failures = 0;
    for (const auto& p : pts) {
        write_csv_row(csv, {format_g17(p.x), format_g17(p.p_excited),
                            format_g17(p.p_not_excited), format_g17(p.leakage),
                            format_g17(p.norm_drift), p.error});
        if (!p.error.empty()) ++failures;
    }
    if (failures > 0)
        throw SolverError(std::to_string(failures) + " leakage point(s) failed");
}

void run_optimize(const RunConfig& cfg, const std::string& out_dir, unsigned threads) {
    if (!cfg.has_optimization)
        throw ValidationError("config: optimization section required for the optimize command");
    snapshot_config(cfg, out_dir);
    const OptimizationResult res = optimize(cfg.opt);

    {
        auto csv = open_out(out_dir, "trace.csv");
        write_csv_row(csv, {"co_f", "ej_hz", "eta", "t1_s", "fwhm_hz", "feasible"});
        for (const auto& t : res.trace)
            write_csv_row(csv, {format_g17(t.co), format_g17(t.ej_hz), format_g17(t.eta),
                                format_g17(t.t1), format_g17(t.fwhm_hz),
                                t.feasible ? "1" : "0"});
    }

    json out = to_json(res);
    out["config"] = cfg.raw;
    if (res.status == OptimizationStatus::Ok) {
        const FabricationEnvelope env = fabrication_envelope(cfg.opt, res, cfg.fab_rel_err);
        out["fabrication_envelope"] = {{"rel_err", cfg.fab_rel_err},
                                       {"eta_min", env.eta_min},
                                       {"eta_max", env.eta_max}};
        auto csv = open_out(out_dir, "envelope.csv");
        write_csv_row(csv, {"co_f", "ej_hz", "eta", "feasible"});
        for (const auto& p : env.points)
            write_csv_row(csv, {format_g17(p.co), format_g17(p.ej_hz), format_g17(p.eta),
                                p.feasible ? "1" : "0"});
    }

    if (!cfg.risetime_grid.empty()) {
        const auto sweep = risetime_sweep(cfg.opt, cfg.risetime_grid, threads);
        auto csv = open_out(out_dir, "risetime.csv");
        write_csv_row(csv, {"t_r_s", "status", "co_f", "ej_hz", "eta", "t1_s", "fwhm_hz",
                            "eta_min", "eta_max"});
        for (const auto& r : sweep) {
            std::string eta_min = "", eta_max = "";
            if (r.status == OptimizationStatus::Ok) {
                const FabricationEnvelope env =
                    fabrication_envelope(cfg.opt, r, cfg.fab_rel_err);
                eta_min = format_g17(env.eta_min);
                eta_max = format_g17(env.eta_max);
            }
            write_csv_row(csv,
                          {format_g17(r.t_r),
                           r.status == OptimizationStatus::Ok ? "ok" : "infeasible",
                           format_g17(r.co), format_g17(r.ej_hz), format_g17(r.report.eta),
                           format_g17(r.report.t1), format_g17(r.report.fwhm_hz), eta_min,
                           eta_max});
        }
    }

    auto js = open_out(out_dir, "result.json");
    js << out.dump(2) << '\n';
    if (res.status != OptimizationStatus::Ok)
        throw InfeasibleError("optimization infeasible: no point satisfies the constraints");
}

void run_spectrum(const RunConfig& cfg, const std::string& out_dir, unsigned /*threads*/) {
    snapshot_config(cfg, out_dir);
    const double omega = 2.0 * pi * (cfg.has_optimization ? cfg.opt.emission_freq_hz : 6e9);
    double period = cfg.spec_period;
    if (period <= 0 && cfg.spec_t1 > 0) period = 5.0 * cfg.spec_t1;
    json out{{"config", cfg.raw}};
    const double t_r = cfg.t_r;
    if (cfg.architecture == Architecture::Cpb) {
        out["triangle"] = spectral_leakage_cpb(SpectralPulse::Triangle, cfg.cpb, t_r, 0.0,
                                               omega, cfg.spec_gamma_linewidth,
                                               cfg.spec_beta_c, cfg.spec_eval);
        if (period > 0)
            out["trapezoid"] = spectral_leakage_cpb(SpectralPulse::Trapezoid, cfg.cpb, t_r,
                                                    period, omega, cfg.spec_gamma_linewidth,
                                                    cfg.spec_beta_c, cfg.spec_eval);
    } else {
        out["triangle"] = spectral_leakage_flux(SpectralPulse::Triangle, cfg.flux, t_r, 0.0,
                                                omega, cfg.spec_gamma_linewidth,
                                                cfg.spec_beta_c, cfg.spec_eval);
        if (period > 0)
            out["trapezoid"] = spectral_leakage_flux(SpectralPulse::Trapezoid, cfg.flux, t_r,
                                                     period, omega, cfg.spec_gamma_linewidth,
                                                     cfg.spec_beta_c, cfg.spec_eval);
    }
    auto js = open_out(out_dir, "spectrum.json");
    js << out.dump(2) << '\n';
}

} // namespace lzgen

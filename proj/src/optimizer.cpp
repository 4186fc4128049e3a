#include "lzgen/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "lzgen/constants.hpp"
#include "lzgen/cpb_model.hpp"
#include "lzgen/lz_analytics.hpp"
#include "lzgen/parallel.hpp"

namespace lzgen {

void OptimizationProblem::validate() const {
    if (!(t_r > 0)) throw ValidationError("OptimizationProblem: t_r must be > 0");
    if (!(t1_max > 0)) throw ValidationError("OptimizationProblem: t1_max must be > 0");
    if (!(co_min > 0) || !(co_max > co_min))
        throw ValidationError("OptimizationProblem: co bounds must satisfy 0 < co_min < co_max");
    if (!(ej_min_hz > 0) || !(ej_max_hz > ej_min_hz))
        throw ValidationError("OptimizationProblem: ej bounds must be ordered and positive");
    if (!(emission_freq_hz > 0))
        throw ValidationError("OptimizationProblem: emission_freq_hz must be > 0");
    if (grid_points < 8) throw ValidationError("OptimizationProblem: grid_points must be >= 8");
    if (linewidth_max_hz < 0)
        throw ValidationError("OptimizationProblem: linewidth_max_hz must be >= 0");
    if (architecture == Architecture::Cpb) {
        cpb.validate();
        if (!(cpb_sweep_range_ng > 0))
            throw ValidationError("OptimizationProblem: cpb_sweep_range_ng must be > 0");
    } else {
        flux.validate();
        if (!(linewidth_max_hz > 0))
            throw ValidationError("OptimizationProblem: flux optimization needs linewidth_max_hz");
    }
}

double OptimizationProblem::mu_rate() const {
    const double range =
        flux_sweep_range_phi0 > 0 ? flux_sweep_range_phi0 : 2.0 * flux.sweep_halfrange_phi0;
    return range / t_r;
}

namespace {

// deterministic bracketed golden-section maximization
double golden_max(const std::function<double(double)>& f, double a, double b, int iters = 90) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return g;
}

struct CpbEval {
    EfficiencyReport rep;
    bool t1_ok = false;
};

CpbEval eval_cpb(const OptimizationProblem& prob, double co) {
    CpbParams q = prob.cpb;
    q.co = co;
    CpbEval ev;
    ev.rep = usable_efficiency_cpb(q, prob.lambda_rate(), 2.0 * pi * prob.emission_freq_hz);
    ev.t1_ok = ev.rep.t1 <= prob.t1_max;
    return ev;
}

} // namespace

OptimizationResult optimize_cpb(const OptimizationProblem& prob) {
    prob.validate();
    OptimizationResult res;
    res.architecture = Architecture::Cpb;
    res.t_r = prob.t_r;

    // pass 1: minimum achievable Gamma_2 over the C_o range (proximity reference)
    const auto gamma2_of = [&](double co) { return eval_cpb(prob, co).rep.gamma2(); };
    const auto grid = log_grid(prob.co_min, prob.co_max, prob.grid_points);
    size_t i_min = 0;
    double g2_min_grid = std::numeric_limits<double>::max();
    for (size_t i = 0; i < grid.size(); ++i) {
        const double g2 = gamma2_of(grid[i]);
        if (g2 < g2_min_grid) {
            g2_min_grid = g2;
            i_min = i;
        }
    }
    const double a_min = grid[i_min > 0 ? i_min - 1 : 0];
    const double b_min = grid[std::min(i_min + 1, grid.size() - 1)];
    const double co_g2min = golden_max([&](double c) { return -gamma2_of(c); }, a_min, b_min);
    const double g2_min = std::min(g2_min_grid, gamma2_of(co_g2min));

    double g2_cap = (1.0 + prob.lw_proximity_delta) * g2_min;
    if (prob.linewidth_max_hz > 0)
        g2_cap = std::min(g2_cap, 2.0 * pi * prob.linewidth_max_hz);

    // pass 2: maximize eta subject to the Gamma_2 cap and T1 <= t1_max
    const auto score = [&](double co) {
        const CpbEval ev = eval_cpb(prob, co);
        if (!ev.t1_ok || ev.rep.gamma2() > g2_cap) return -1.0;
        return ev.rep.eta;
    };
    size_t i_best = grid.size();
    double best = -1.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const CpbEval ev = eval_cpb(prob, grid[i]);
        const bool feasible = ev.t1_ok && ev.rep.gamma2() <= g2_cap;
        res.trace.push_back({grid[i], prob.cpb.ej_hz, ev.rep.eta, ev.rep.t1, ev.rep.fwhm_hz,
                             feasible});
        if (feasible && ev.rep.eta > best) {
            best = ev.rep.eta;
            i_best = i;
        }
    }
    if (i_best == grid.size()) {
        res.status = OptimizationStatus::Infeasible;
        return res;
    }
    const double a = grid[i_best > 0 ? i_best - 1 : 0];
    const double b = grid[std::min(i_best + 1, grid.size() - 1)];
    double co_best = golden_max(score, a, b);
    if (score(co_best) < score(grid[i_best])) co_best = grid[i_best];

    const CpbEval ev = eval_cpb(prob, co_best);
    res.status = OptimizationStatus::Ok;
    res.co = co_best;
    res.ej_hz = prob.cpb.ej_hz;
    res.report = ev.rep;
    res.t1_slack = prob.t1_max - ev.rep.t1;
    res.linewidth_slack_hz = (g2_cap - ev.rep.gamma2()) / (2.0 * pi);
    return res;
}

namespace {

// closed-form C_o giving a target output decay rate: Gamma_o = 2 omega Z (C nu)^2 / hbar
double co_for_gamma_o(const FluxParams& p, double omega, double gamma_o) {
    const double nu = p.ej_hz / 1e9 * 1e-7;
    return std::sqrt(gamma_o * hbar / (2.0 * omega * p.z_env)) / nu;
}

struct FluxInner {
    bool feasible = false;
    double co = 0.0;
    EfficiencyReport rep;
};

// optimal C_o at fixed E_J: eta increases with Gamma_o, so take the largest C_o
// allowed by the linewidth cap, the C_o bounds, and T1 <= t1_max from below
FluxInner flux_inner(const OptimizationProblem& prob, double ej_hz) {
    FluxInner out;
    FluxParams q = prob.flux;
    q.ej_hz = ej_hz;
    const double omega = 2.0 * pi * prob.emission_freq_hz;
    const double g2_cap = 2.0 * pi * prob.linewidth_max_hz;
    const FluxRates fr0 = flux_rates(q, omega);
    const double gamma_f = 0.0;  // flux-line decay neglected in the default path
    // linewidth: (Gamma_o + Gamma_nr + Gamma_f)/2 + Gamma_phi <= g2_cap
    const double go_cap = 2.0 * (g2_cap - fr0.gamma_phi) - q.gamma_nr - gamma_f;
    if (go_cap <= 0.0) return out;
    double co_hi = std::min(co_for_gamma_o(q, omega, go_cap), prob.co_max);
    // repetition rate: Gamma_1 >= 1/t1_max
    const double go_floor = 1.0 / prob.t1_max - q.gamma_nr - gamma_f;
    double co_lo = prob.co_min;
    if (go_floor > 0.0) co_lo = std::max(co_lo, co_for_gamma_o(q, omega, go_floor));
    if (co_hi < co_lo) return out;
    q.co = co_hi;
    out.rep = usable_efficiency_flux(q, prob.mu_rate(), omega);
    if (out.rep.t1 > prob.t1_max || out.rep.gamma2() > g2_cap * (1.0 + 1e-12)) return out;
    out.feasible = true;
    out.co = co_hi;
    return out;
}

} // namespace

OptimizationResult optimize_flux(const OptimizationProblem& prob) {
    prob.validate();
    OptimizationResult res;
    res.architecture = Architecture::Flux;
    res.t_r = prob.t_r;

    const auto grid = log_grid(prob.ej_min_hz, prob.ej_max_hz, prob.grid_points);
    size_t i_best = grid.size();
    double best = -1.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const FluxInner in = flux_inner(prob, grid[i]);
        res.trace.push_back(
            {in.co, grid[i], in.rep.eta, in.rep.t1, in.rep.fwhm_hz, in.feasible});
        if (in.feasible && in.rep.eta > best) {
            best = in.rep.eta;
            i_best = i;
        }
    }
    if (i_best == grid.size()) {
        res.status = OptimizationStatus::Infeasible;
        return res;
    }
    const auto score = [&](double ej) {
        const FluxInner in = flux_inner(prob, ej);
        return in.feasible ? in.rep.eta : -1.0;
    };
    const double a = grid[i_best > 0 ? i_best - 1 : 0];
    const double b = grid[std::min(i_best + 1, grid.size() - 1)];
    double ej_best = golden_max(score, a, b);
    if (score(ej_best) < score(grid[i_best])) ej_best = grid[i_best];

    const FluxInner in = flux_inner(prob, ej_best);
    res.status = OptimizationStatus::Ok;
    res.co = in.co;
    res.ej_hz = ej_best;
    res.report = in.rep;
    res.t1_slack = prob.t1_max - in.rep.t1;
    res.linewidth_slack_hz = prob.linewidth_max_hz - in.rep.gamma2() / (2.0 * pi);
    return res;
}

OptimizationResult optimize(const OptimizationProblem& prob) {
    return prob.architecture == Architecture::Cpb ? optimize_cpb(prob) : optimize_flux(prob);
}

FabricationEnvelope fabrication_envelope(const OptimizationProblem& prob,
                                         const OptimizationResult& result, double rel_err) {
    if (result.status != OptimizationStatus::Ok)
        throw ValidationError("fabrication_envelope: result must be a feasible optimum");
    if (rel_err < 0) throw ValidationError("fabrication_envelope: rel_err must be >= 0");
    FabricationEnvelope env;
    env.eta_min = std::numeric_limits<double>::max();
    env.eta_max = -std::numeric_limits<double>::max();
    const double omega = 2.0 * pi * prob.emission_freq_hz;
    const double g2_cap = prob.linewidth_max_hz > 0
                              ? 2.0 * pi * prob.linewidth_max_hz
                              : std::numeric_limits<double>::max();
    for (int ic = -1; ic <= 1; ++ic) {
        for (int ie = -1; ie <= 1; ++ie) {
            const double co = result.co * (1.0 + rel_err * ic);
            const double ej = result.ej_hz * (1.0 + rel_err * ie);
            EfficiencyReport rep;
            if (prob.architecture == Architecture::Cpb) {
                CpbParams q = prob.cpb;
                q.co = co;
                q.ej_hz = ej;
                rep = usable_efficiency_cpb(q, prob.lambda_rate(), omega);
            } else {
                FluxParams q = prob.flux;
                q.co = co;
                q.ej_hz = ej;
                rep = usable_efficiency_flux(q, prob.mu_rate(), omega);
            }
            const bool feasible = rep.t1 <= prob.t1_max && rep.gamma2() <= g2_cap;
            env.points.push_back({co, ej, rep.eta, feasible});
            env.eta_min = std::min(env.eta_min, rep.eta);
            env.eta_max = std::max(env.eta_max, rep.eta);
        }
    }
    return env;
}

std::vector<OptimizationResult> risetime_sweep(const OptimizationProblem& prob,
                                               const std::vector<double>& t_r_grid,
                                               unsigned threads) {
    if (t_r_grid.empty()) throw ValidationError("risetime_sweep: empty grid");
    return parallel_map(t_r_grid.size(), threads, [&](std::size_t i) {
        OptimizationProblem p = prob;
        p.t_r = t_r_grid[i];
        return optimize(p);
    });
}

double flux_min_linewidth_hz(const OptimizationProblem& prob, double ej_hz) {
    FluxParams q = prob.flux;
    q.ej_hz = ej_hz;
    q.co = prob.co_min;
    const double omega = 2.0 * pi * prob.emission_freq_hz;
    const FluxRates fr = flux_rates(q, omega);
    const double gamma1_min = std::max(fr.gamma1_o + q.gamma_nr, 1.0 / prob.t1_max);
    return (0.5 * gamma1_min + fr.gamma_phi) / (2.0 * pi);
}

} // namespace lzgen

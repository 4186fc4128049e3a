#include "lzgen/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "lzgen/constants.hpp"
#include "lzgen/parallel.hpp"

namespace lzgen {

namespace {

using Cplx = std::complex<double>;

// dpsi/dt = -i 2 pi H_hz psi
struct Rhs {
    const HamiltonianFn& fill;
    Eigen::MatrixXcd h;

    explicit Rhs(const HamiltonianFn& f, Eigen::Index dim) : fill(f), h(dim, dim) {}

    void operator()(double chi, const StateVector& y, StateVector& dy) {
        fill(chi, h);
        dy.noalias() = h * y;
        dy *= Cplx(0.0, -2.0 * pi);
    }
};

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct Dp54 {
    Rhs rhs;
    const std::function<double(double)>& chi_of_t;
    double rtol, atol;
    StateVector k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;
    bool have_k1 = false;

    Dp54(const HamiltonianFn& f, const std::function<double(double)>& chi, Eigen::Index dim,
         double rt, double at)
        : rhs(f, dim), chi_of_t(chi), rtol(rt), atol(at) {
        k1 = k2 = k3 = k4 = k5 = k6 = k7 = ytmp = ynew = yerr = StateVector::Zero(dim);
    }

    void eval(double t, const StateVector& y, StateVector& dy) { rhs(chi_of_t(t), y, dy); }

    // one attempted step; returns scaled error norm, fills ynew
    double attempt(double t, const StateVector& y, double h) {
        if (!have_k1) {
            eval(t, y, k1);
            have_k1 = true;
        }
        ytmp = y + h * a21 * k1;
        eval(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        eval(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        eval(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        eval(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        eval(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        eval(t + h, ynew, k7);  // FSAL
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double acc = 0.0;
        const Eigen::Index n = y.size();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = std::abs(yerr[i]) / sc;
            acc += r * r;
        }
        return std::sqrt(acc / static_cast<double>(n));
    }

    void accept() {
        k1.swap(k7);  // FSAL: derivative at the new point
    }
};

// integrate from t0 to t1, updating psi in place; h_inout carries the controller's
// step-size suggestion across interval boundaries (never the endpoint-clipped value)
void integrate_dp54(Dp54& stepper, StateVector& psi, double t0, double t1, double max_step,
                    double& h_inout) {
    const double hmin =
        64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t1), max_step);
    double t = t0;
    double h_next = std::min(h_inout, max_step);
    int consecutive_rejects = 0;
    while (t < t1) {
        double h = h_next;
        bool clipped = false;
        if (t + h >= t1) {
            h = t1 - t;
            clipped = true;
        }
        if (h <= 0.0) break;
        if (h < hmin && !clipped)
            throw SolverError("propagate: step size underflow at t = " + std::to_string(t));
        const double err = stepper.attempt(t, psi, h);
        if (err <= 1.0) {
            psi = stepper.ynew;
            stepper.accept();
            consecutive_rejects = 0;
            if (clipped) {
                t = t1;  // snap to the endpoint; keep the pre-clip suggestion
            } else {
                t += h;
                const double fac = std::min(
                    5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
                h_next = std::min(h * fac, max_step);
            }
        } else {
            if (++consecutive_rejects > 60)
                throw SolverError("propagate: tolerance failure (60 consecutive rejections)");
            h_next = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h_next < hmin)
                throw SolverError("propagate: step size underflow after rejection");
            stepper.have_k1 = true;  // k1 still valid at unchanged (t, psi)
        }
    }
    h_inout = h_next;
}

void integrate_rk4(Rhs& rhs, const std::function<double(double)>& chi_of_t, StateVector& psi,
                   double t0, double t1, double max_step) {
    const double span = t1 - t0;
    if (span <= 0.0) return;
    const int n = std::max(1, static_cast<int>(std::ceil(span / max_step)));
    const double h = span / n;
    const Eigen::Index dim = psi.size();
    StateVector k1(dim), k2(dim), k3(dim), k4(dim), ytmp(dim);
    for (int i = 0; i < n; ++i) {
        const double t = t0 + i * h;
        rhs(chi_of_t(t), psi, k1);
        ytmp = psi + 0.5 * h * k1;
        rhs(chi_of_t(t + 0.5 * h), ytmp, k2);
        ytmp = psi + 0.5 * h * k2;
        rhs(chi_of_t(t + 0.5 * h), ytmp, k3);
        ytmp = psi + h * k3;
        rhs(chi_of_t(t + h), ytmp, k4);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
}

} // namespace

HamiltonianFn make_cpb_hamiltonian_fn_from_eq(double eq_hz, double ej_hz,
                                              const ChargeBasis& basis) {
    basis.validate();
    // off-diagonal template; only the diagonal depends on n_g
    HermitianMatrix h0 = HermitianMatrix::Zero(basis.dim(), basis.dim());
    for (int n = basis.n_min; n < basis.n_max; ++n) {
        h0(basis.index_of(n), basis.index_of(n + 1)) = -0.5 * ej_hz;
        h0(basis.index_of(n + 1), basis.index_of(n)) = -0.5 * ej_hz;
    }
    const int n_min = basis.n_min, n_max = basis.n_max;
    return [h0, eq_hz, n_min, n_max](double n_g, Eigen::MatrixXcd& h) {
        h = h0;
        for (int n = n_min; n <= n_max; ++n) {
            const double d = static_cast<double>(n) - n_g;
            h(n - n_min, n - n_min) = eq_hz * d * d;
        }
    };
}

HamiltonianFn make_cpb_hamiltonian_fn(const CpbParams& p, const ChargeBasis& basis) {
    return make_cpb_hamiltonian_fn_from_eq(cpb_charging_energy_hz(p), p.ej_hz, basis);
}

HamiltonianFn make_flux_hamiltonian_fn(const FluxParams& p) {
    p.validate();
    const double slope = p.gamma_factor() * p.ej_hz * 2.0 * pi;
    const double off = -0.5 * p.delta_hz;
    return [slope, off](double dphi_e, Eigen::MatrixXcd& h) {
        h.setZero();
        h(0, 0) = -slope * dphi_e;
        h(1, 1) = slope * dphi_e;
        h(0, 1) = off;
        h(1, 0) = off;
    };
}

StateVector eigenstate(const HermitianMatrix& h, int level) {
    if (level < 0 || level >= h.rows())
        throw ValidationError("eigenstate: level outside matrix dimension");
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> es(h);
    if (es.info() != Eigen::Success) throw SolverError("eigenstate: eigensolver failed");
    return es.eigenvectors().col(level);
}

SimulationResult propagate(const HamiltonianFn& h_of_chi, const Drive& drive,
                           const StateVector& psi0, const SolverOptions& opts) {
    opts.validate();
    if (!(drive.duration > 0)) throw ValidationError("propagate: drive duration must be > 0");
    if (std::abs(psi0.norm() - 1.0) > 1e-9)
        throw ValidationError("propagate: psi0 must be normalized");

    const Eigen::Index dim = psi0.size();
    const double duration = drive.duration;
    const double max_step = opts.max_step > 0 ? opts.max_step : duration / 200.0;
    const int samples = opts.samples;

    SimulationResult res;
    res.times.resize(static_cast<size_t>(samples));
    res.populations.resize(samples, dim);

    StateVector psi = psi0;
    Eigen::MatrixXcd h(dim, dim);
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> es;
    double norm_drift = 0.0;

    // integrator stage times sit inside [0, duration] mathematically; clamp away
    // the odd ulp of rounding before handing them to the drive
    const std::function<double(double)> chi = [&drive, duration](double t) {
        return drive.chi(std::clamp(t, 0.0, duration));
    };

    Rhs rk4_rhs(h_of_chi, dim);
    Dp54 dp(h_of_chi, chi, dim, opts.rel_tol, opts.abs_tol);
    double h_adaptive = max_step;

    for (int i = 0; i < samples; ++i) {
        const double t =
            i == samples - 1 ? duration : duration * static_cast<double>(i) / (samples - 1);
        if (i > 0) {
            const double t_prev = duration * static_cast<double>(i - 1) / (samples - 1);
            if (opts.method == SolverMethod::AdaptiveDp54)
                integrate_dp54(dp, psi, t_prev, t, max_step, h_adaptive);
            else
                integrate_rk4(rk4_rhs, chi, psi, t_prev, t, max_step);
        }
        res.times[static_cast<size_t>(i)] = t;
        norm_drift = std::max(norm_drift, std::abs(psi.norm() - 1.0));
        h_of_chi(chi(t), h);
        es.compute(h);
        if (es.info() != Eigen::Success) throw SolverError("propagate: eigensolver failed");
        for (Eigen::Index lvl = 0; lvl < dim; ++lvl) {
            const Cplx amp = es.eigenvectors().col(lvl).dot(psi);
            res.populations(i, lvl) = std::norm(amp);
        }
    }

    res.psi_final = psi;
    res.norm_drift = norm_drift;
    res.p_ground_final = res.populations(samples - 1, 0);
    res.p_excited_final = dim > 1 ? res.populations(samples - 1, 1) : 0.0;
    res.leakage_final = 1.0 - res.p_ground_final - res.p_excited_final;
    return res;
}

double diabatic_limit(const HermitianMatrix& h_initial, const HermitianMatrix& h_final) {
    if (h_initial.rows() != h_final.rows())
        throw ValidationError("diabatic_limit: dimension mismatch");
    if (h_initial.rows() < 2)
        throw ValidationError("diabatic_limit: need at least two levels");
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> ei(h_initial), ef(h_final);
    if (ei.info() != Eigen::Success || ef.info() != Eigen::Success)
        throw SolverError("diabatic_limit: eigensolver failed");
    const auto isolated = [](const Eigen::VectorXd& ev, int lvl) {
        const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        const double tol = 1e-12 * std::max(scale, 1.0);
        if (lvl > 0 && ev(lvl) - ev(lvl - 1) <= tol) return false;
        if (lvl + 1 < ev.size() && ev(lvl + 1) - ev(lvl) <= tol) return false;
        return true;
    };
    if (!isolated(ei.eigenvalues(), 0) || !isolated(ef.eigenvalues(), 1))
        throw ValidationError("diabatic_limit: degenerate eigenvalues at requested levels");
    const Cplx overlap = ef.eigenvectors().col(1).dot(ei.eigenvectors().col(0));
    return std::norm(overlap);
}

namespace {

ScanPoint run_sweep_point(double eq_hz, double ej_hz, const ChargeBasis& basis,
                          PulseShape shape, double ng_start, double ng_end, double t_r,
                          double x_value, const SolverOptions& opts) {
    ScanPoint pt;
    pt.x = x_value;
    try {
        const PulseSegment seg{shape, ng_start, ng_end, t_r};
        const auto fn = make_cpb_hamiltonian_fn_from_eq(eq_hz, ej_hz, basis);
        HermitianMatrix h0 = cpb_hamiltonian_from_eq(eq_hz, ej_hz, basis, ng_start);
        const StateVector psi0 = eigenstate(h0, 0);
        const SimulationResult r = propagate(fn, make_drive(seg), psi0, opts);
        pt.p_excited = r.p_excited_final;
        pt.p_not_excited = 1.0 - r.p_excited_final;
        pt.leakage = r.leakage_final;
        pt.norm_drift = r.norm_drift;
    } catch (const std::exception& e) {
        pt.error = e.what();
    }
    return pt;
}

} // namespace

std::vector<ScanPoint> leakage_scan_risetime(double eq_hz, double ej_hz,
                                             const ChargeBasis& basis, PulseShape shape,
                                             double ng_start, double ng_end,
                                             const std::vector<double>& t_r_grid,
                                             const SolverOptions& opts, unsigned threads) {
    if (t_r_grid.empty()) throw ValidationError("leakage_scan_risetime: empty grid");
    return parallel_map(t_r_grid.size(), threads, [&](std::size_t i) {
        return run_sweep_point(eq_hz, ej_hz, basis, shape, ng_start, ng_end, t_r_grid[i],
                               t_r_grid[i], opts);
    });
}

std::vector<ScanPoint> leakage_scan_risetime(const CpbParams& p, const ChargeBasis& basis,
                                             PulseShape shape, double ng_start, double ng_end,
                                             const std::vector<double>& t_r_grid,
                                             const SolverOptions& opts, unsigned threads) {
    return leakage_scan_risetime(cpb_charging_energy_hz(p), p.ej_hz, basis, shape, ng_start,
                                 ng_end, t_r_grid, opts, threads);
}

std::vector<ScanPoint> leakage_scan_range(double eq_hz, double ej_hz, const ChargeBasis& basis,
                                          PulseShape shape, double t_r,
                                          const std::vector<double>& ng_min_grid,
                                          const SolverOptions& opts, unsigned threads) {
    if (ng_min_grid.empty()) throw ValidationError("leakage_scan_range: empty grid");
    return parallel_map(ng_min_grid.size(), threads, [&](std::size_t i) {
        const double ng_min = ng_min_grid[i];
        return run_sweep_point(eq_hz, ej_hz, basis, shape, ng_min, 1.0 - ng_min, t_r, ng_min,
                               opts);
    });
}

} // namespace lzgen

// dynamics.hpp — time-dependent Schrodinger propagation in the fixed charge basis,
// instantaneous-eigenbasis populations, diabatic limit, and leakage scans

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lzgen/cpb_model.hpp"
#include "lzgen/flux_model.hpp"
#include "lzgen/pulse.hpp"

namespace lzgen {

using StateVector = Eigen::VectorXcd;

enum class SolverMethod { Rk4Fixed, AdaptiveDp54 };

struct SolverOptions {
    SolverMethod method = SolverMethod::AdaptiveDp54;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.0;  // <= 0 selects duration/200
    int samples = 201;      // output grid size, including both endpoints

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0))
            throw ValidationError("SolverOptions: tolerances must be > 0");
        if (samples < 2) throw ValidationError("SolverOptions: samples must be >= 2");
    }
};

struct SimulationResult {
    std::vector<double> times;      // s
    Eigen::MatrixXd populations;    // samples x dim, instantaneous eigenbasis (ascending)
    Eigen::VectorXcd psi_final;     // state in the fixed basis at the final time
    double p_ground_final = 0.0;
    double p_excited_final = 0.0;
    double leakage_final = 0.0;     // 1 - p_ground - p_excited at the final time
    double norm_drift = 0.0;        // max | ||psi|| - 1 | over the sample grid
};

// Fills H (Hz units) for a given control value; reused across integrator stages.
using HamiltonianFn = std::function<void(double chi, Eigen::MatrixXcd& h)>;

// Control value is the gate charge n_g.
HamiltonianFn make_cpb_hamiltonian_fn(const CpbParams& p, const ChargeBasis& basis);
HamiltonianFn make_cpb_hamiltonian_fn_from_eq(double eq_hz, double ej_hz,
                                              const ChargeBasis& basis);
// Control value is the flux offset dphi_e in Phi0 units.
HamiltonianFn make_flux_hamiltonian_fn(const FluxParams& p);

// Eigenvector of h for the given level (ascending order).
StateVector eigenstate(const HermitianMatrix& h, int level);

// Integrates i hbar dpsi/dt = H(chi(t)) psi with H in Hz units
// (dpsi/dt = -i 2 pi H psi); populations reported in the instantaneous eigenbasis.
SimulationResult propagate(const HamiltonianFn& h_of_chi, const Drive& drive,
                           const StateVector& psi0, const SolverOptions& opts = {});

// |<ground of h_initial | first excited of h_final>|^2: the success ceiling of a
// perfect (infinitely fast) diabatic transition.
double diabatic_limit(const HermitianMatrix& h_initial, const HermitianMatrix& h_final);

struct ScanPoint {
    double x = 0.0;              // grid value (t_r or n_g_min)
    double p_excited = 0.0;
    double p_not_excited = 0.0;
    double leakage = 0.0;
    double norm_drift = 0.0;
    std::string error;           // empty on success
};

// Leakage (population outside the two lowest instantaneous eigenstates) after a
// single linear-or-shaped sweep from ng_start to ng_end, for each rise time.
std::vector<ScanPoint> leakage_scan_risetime(double eq_hz, double ej_hz,
                                             const ChargeBasis& basis, PulseShape shape,
                                             double ng_start, double ng_end,
                                             const std::vector<double>& t_r_grid,
                                             const SolverOptions& opts = {},
                                             unsigned threads = 1);
std::vector<ScanPoint> leakage_scan_risetime(const CpbParams& p, const ChargeBasis& basis,
                                             PulseShape shape, double ng_start, double ng_end,
                                             const std::vector<double>& t_r_grid,
                                             const SolverOptions& opts = {},
                                             unsigned threads = 1);

// Leakage vs sweep range: n_g swept from ng_min to 1 - ng_min at fixed rise time.
std::vector<ScanPoint> leakage_scan_range(double eq_hz, double ej_hz,
                                          const ChargeBasis& basis, PulseShape shape,
                                          double t_r, const std::vector<double>& ng_min_grid,
                                          const SolverOptions& opts = {},
                                          unsigned threads = 1);

} // namespace lzgen

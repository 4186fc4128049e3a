// cpb_model.hpp — CPB charge-basis Hamiltonian, charging energy, transition frequency,
// and the transmission-line effective-capacitance correction

#pragma once

#include <Eigen/Dense>

#include "lzgen/params.hpp"

namespace lzgen {

using HermitianMatrix = Eigen::MatrixXcd;

// C_eff = C / (1 + k_m/beta), with beta's frequency equivalent beta_hz = beta_coeff/C.
// Identity at km_hz = 0, strictly decreasing in km_hz.
double effective_capacitance(double c, double km_hz, double beta_coeff_hz_f);

// C_Sigma = C_J + C_g,eff + C_o,eff. Zero-valued couplings contribute zero.
double c_sigma(const CpbParams& p);

// Charging energy of one Cooper pair, E_Q/h = (2e)^2 / (2 C_Sigma h), in Hz.
double cpb_charging_energy_hz(const CpbParams& p);

// H in Hz units over the given charge basis at gate charge n_g:
// diagonal E_Q(n - n_g)^2, first off-diagonals -E_J/2.
HermitianMatrix cpb_hamiltonian(const CpbParams& p, const ChargeBasis& basis, double n_g);

// Same builder with E_Q/h stated directly instead of derived from capacitances.
HermitianMatrix cpb_hamiltonian_from_eq(double eq_hz, double ej_hz, const ChargeBasis& basis,
                                        double n_g);

// Two-level transition frequency, Hz: sqrt(f_J^2 + f_Q^2 (1 - 2 n_g)^2).
double cpb_transition_frequency(const CpbParams& p, double n_g);
double cpb_transition_frequency_from_eq(double eq_hz, double ej_hz, double n_g);

// max_ij |H - H^dagger| relative to the largest entry
bool is_hermitian(const HermitianMatrix& h, double rel_tol = 1e-12);

} // namespace lzgen

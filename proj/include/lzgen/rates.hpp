// rates.hpp — decay and dephasing rates, usable efficiency, spectral pulse-leakage
// bounds, thermal occupancy, and the protocol-decay bound

#pragma once

#include "lzgen/params.hpp"

namespace lzgen {

// Per-design summary. fwhm_hz follows 2 pi FWHM = 2 Gamma_2 = Gamma_1 + 2 Gamma_phi,
// i.e. fwhm_hz = Gamma_2 / pi.
struct EfficiencyReport {
    double p_ex = 0.0;
    double gamma_o = 0.0;      // decay into the output line (1/s)
    double gamma_other = 0.0;  // Gamma_g (CPB) or Gamma_f (flux, optional), 1/s
    double gamma_nr = 0.0;     // 1/s
    double eta = 0.0;          // usable efficiency
    double t1 = 0.0;           // 1/(gamma_o + gamma_other + gamma_nr), s
    double gamma_phi = 0.0;    // pure dephasing (1/s)
    double fwhm_hz = 0.0;
    double rep_rate_hz = 0.0;  // 1/(5 T1)

    double gamma_total() const { return gamma_o + gamma_other + gamma_nr; }
    // total coherence decay rate Gamma_2 = Gamma_1/2 + Gamma_phi
    double gamma2() const { return 0.5 * gamma_total() + gamma_phi; }
};

// Eq.-style CPB channel decay: Gamma_1 = R C^2 omega^2 / (4 C_Sigma), with the
// coupling capacitance passed explicitly (use the effective value for a physical line).
// omega is angular (rad/s).
double cpb_gamma1(const CpbParams& p, double c_coupling, double omega);

// Charge-noise dephasing from the analytic derivatives of the two-level transition
// frequency; the approx variant is the flat estimate n_rms E_Q / hbar.
double cpb_gamma_phi(const CpbParams& p, double n_g);
double cpb_gamma_phi_approx(const CpbParams& p);

struct FluxRates {
    double gamma1_o = 0.0;
    double gamma_phi = 0.0;
    double nu_volts = 0.0;  // flux-qubit voltage scale, E_J/h x 1e-7 V/GHz
};

// Flux-qubit output decay 2 omega Z (C_o nu)^2 / hbar and flux-noise dephasing
// phi_rms gamma E_J / hbar. omega is angular (rad/s).
FluxRates flux_rates(const FluxParams& p, double omega);

// Order-of-magnitude flux-line decay estimate, normalized to ~1e3 1/s at
// Delta/h = 4 GHz, E_J/h = 250 GHz, omega = 2 pi x 4 GHz, M = 0.015 Phi0/mA.
double flux_gamma_f_estimate(const FluxParams& p, double omega);

// lambda_rate = dn_g/dt (1/s); omega angular emission frequency.
EfficiencyReport usable_efficiency_cpb(const CpbParams& p, double lambda_rate, double omega);

// mu_rate per flux_excitation_probability; flux-line decay neglected unless
// include_flux_line is set (then gamma_other = flux_gamma_f_estimate).
EfficiencyReport usable_efficiency_flux(const FluxParams& p, double mu_rate, double omega,
                                        bool include_flux_line = false);

enum class SpectralPulse { Trapezoid, Triangle };
enum class SincEval {
    Envelope,  // |sin| -> 1 worst case; robust against the oscillation zeros
    Exact
};

// Photon leakage of the control pulse into the output line, beta_c P_l / (hbar omega Gamma).
// Both pulse kinds use the same accounting: energy in the band omega +- Gamma is
// (2 Gamma x duration) x (average power) x |S(omega)|^2 with the spectral shape
//   triangle (duration 2 t_r):       |S_tri|  = sinc^2(omega t_r / 2)
//   trapezoid (period T, 50% duty):  |S_trap| = (1/2) sinc(omega T / 4)
// where sinc(x) = sin(pi x)/(pi x) and the trapezoid keeps the loose worst-case
// bound without its rise-time factor. E_char = (2e)^2/C_g for the CPB and
// E_J + Phi0^2/(2M) for the flux qubit; average power = E_char / duration.
// gamma_linewidth (rad/s) cancels algebraically but is kept to mirror the
// published form of the ratio.
double spectral_leakage_cpb(SpectralPulse kind, const CpbParams& p, double t_r,
                            double period, double omega, double gamma_linewidth,
                            double beta_c, SincEval eval = SincEval::Envelope);
double spectral_leakage_flux(SpectralPulse kind, const FluxParams& p, double t_r,
                             double period, double omega, double gamma_linewidth,
                             double beta_c, SincEval eval = SincEval::Envelope);

// Boltzmann factor exp(-h f / k_B T).
double thermal_population(double f_hz, double temp_k);

// Upper bound on decay at an off-target frequency during the catapult,
// 1 - exp(-1.5 t_r / T1).
double protocol_decay_bound(double t_r, double t1);

} // namespace lzgen

// params.hpp — device parameter records for the CPB and flux-qubit architectures

#pragma once

#include <cmath>
#include <string>

#include "lzgen/errors.hpp"

namespace lzgen {

// Cooper-pair box parameters. All energies as ordinary frequencies (Hz).
struct CpbParams {
    double ej_hz = 1e9;           // Josephson energy E_J/h
    double cj = 1e-15;            // junction capacitance (F)
    double cg = 1e-17;            // gate capacitance (F)
    double co = 2.3e-15;          // output capacitance (F)
    double r_env = 50.0;          // environment resistance (Ohm)
    double n_rms = 0.5e-3;        // RMS charge noise (dimensionless)
    double gamma_nr = 1e6;        // non-radiative decay (1/s)
    double km_hz = 90e9;          // transmission-line mode cutoff, frequency equivalent (Hz)
    double beta_coeff_hz_f = 3.2e12 * 1e-15; // beta frequency-equivalent coefficient (Hz*F)

    void validate() const {
        if (!(ej_hz > 0)) throw ValidationError("CpbParams: ej_hz must be > 0");
        if (!(cj > 0)) throw ValidationError("CpbParams: cj must be > 0");
        if (cg < 0) throw ValidationError("CpbParams: cg must be >= 0");
        if (co < 0) throw ValidationError("CpbParams: co must be >= 0");
        if (!(r_env > 0)) throw ValidationError("CpbParams: r_env must be > 0");
        if (n_rms < 0) throw ValidationError("CpbParams: n_rms must be >= 0");
        if (gamma_nr < 0) throw ValidationError("CpbParams: gamma_nr must be >= 0");
        if (km_hz < 0) throw ValidationError("CpbParams: km_hz must be >= 0");
        if (!(beta_coeff_hz_f > 0)) throw ValidationError("CpbParams: beta_coeff_hz_f must be > 0");
    }
};

// Flux-qubit parameters (two-level approximation near Phi0/2).
struct FluxParams {
    double ej_hz = 250e9;         // E_J/h (Hz)
    double delta_hz = 1e9;        // tunnel splitting Delta/h (Hz)
    double alpha = 0.7;           // junction asymmetry
    double co = 2.5e-15;          // output capacitance (F)
    double m_coupling = 3.1017507726928943e-14; // mutual inductance M (H), 0.015 Phi0/mA
    double phi_rms = 1e-5;        // RMS flux noise in units of Phi0
    double gamma_nr = 2e6;        // non-radiative decay (1/s)
    double z_env = 50.0;          // line impedance (Ohm)
    double sweep_halfrange_phi0 = 0.1; // max single-step flux sweep half-range (Phi0)

    void validate() const {
        if (!(alpha > 0.5)) throw ValidationError("FluxParams: alpha must be > 0.5");
        if (!(delta_hz > 0)) throw ValidationError("FluxParams: delta_hz must be > 0");
        if (!(ej_hz > 0)) throw ValidationError("FluxParams: ej_hz must be > 0");
        if (co < 0) throw ValidationError("FluxParams: co must be >= 0");
        if (m_coupling < 0) throw ValidationError("FluxParams: m_coupling must be >= 0");
        if (phi_rms < 0) throw ValidationError("FluxParams: phi_rms must be >= 0");
        if (gamma_nr < 0) throw ValidationError("FluxParams: gamma_nr must be >= 0");
        if (!(z_env > 0)) throw ValidationError("FluxParams: z_env must be > 0");
        if (!(sweep_halfrange_phi0 > 0)) throw ValidationError("FluxParams: sweep_halfrange_phi0 must be > 0");
    }

    // gamma = sqrt(1 - (1/2alpha)^2), real for alpha > 0.5
    double gamma_factor() const {
        const double x = 1.0 / (2.0 * alpha);
        return std::sqrt(1.0 - x * x);
    }
};

// Truncated charge basis n in [n_min, n_max]; the {0,1} working subspace must be interior.
struct ChargeBasis {
    int n_min = -3;
    int n_max = 4;

    void validate() const {
        if (n_min >= 0) throw ValidationError("ChargeBasis: n_min must be < 0");
        if (n_max <= 1) throw ValidationError("ChargeBasis: n_max must be > 1");
    }

    int dim() const { return n_max - n_min + 1; }
    // row/column index of charge state |n>
    int index_of(int n) const { return n - n_min; }
};

} // namespace lzgen

// lz_analytics.hpp — closed-form Landau-Zener transition probabilities

#pragma once

#include "lzgen/params.hpp"

namespace lzgen {

// Generic two-level crossing: gap parameter D expressed as d_hz = D/2pi (Hz) and
// diagonal sweep rate beta (rad/s^2).
struct LzTwoLevel {
    double d_hz = 1e9;
    double beta_rate = 1e20;

    void validate() const {
        if (d_hz < 0) throw ValidationError("LzTwoLevel: d_hz must be >= 0");
        if (!(beta_rate > 0)) throw ValidationError("LzTwoLevel: beta_rate must be > 0");
    }
};

// P(g->e) = exp(-pi D^2 / 2 beta) with D = 2 pi d_hz.
double lz_probability(const LzTwoLevel& m);

// CPB diabatic excitation for gate-charge rate lambda = dn_g/dt (1/s):
// exp(-pi^2 f_J^2 / (2 f_Q lambda)). Identical to lz_probability with
// D = 2 pi f_J, beta = 2 (2 pi f_Q) lambda.
double cpb_excitation_probability(const CpbParams& p, double lambda_rate);
double cpb_excitation_probability_from_eq(double eq_hz, double ej_hz, double lambda_rate);

// Flux-qubit diabatic excitation for sweep rate mu (rad/s, dphi_e = (Phi0/2pi) mu t):
// exp(-pi^2 f_Delta^2 / (gamma f_EJ mu)).
double flux_excitation_probability(const FluxParams& p, double mu_rate);

} // namespace lzgen

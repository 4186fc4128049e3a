#include "lzgen/lz_analytics.hpp"

#include <cmath>

#include "lzgen/constants.hpp"
#include "lzgen/cpb_model.hpp"

namespace lzgen {

double lz_probability(const LzTwoLevel& m) {
    m.validate();
    const double d_angular = 2.0 * pi * m.d_hz;
    return std::exp(-pi * d_angular * d_angular / (2.0 * m.beta_rate));
}

double cpb_excitation_probability_from_eq(double eq_hz, double ej_hz, double lambda_rate) {
    if (!(lambda_rate > 0)) throw ValidationError("cpb_excitation_probability: lambda must be > 0");
    return std::exp(-pi * pi * ej_hz * ej_hz / (2.0 * eq_hz * lambda_rate));
}

double cpb_excitation_probability(const CpbParams& p, double lambda_rate) {
    return cpb_excitation_probability_from_eq(cpb_charging_energy_hz(p), p.ej_hz, lambda_rate);
}

double flux_excitation_probability(const FluxParams& p, double mu_rate) {
    p.validate();
    if (!(mu_rate > 0)) throw ValidationError("flux_excitation_probability: mu must be > 0");
    return std::exp(-pi * pi * p.delta_hz * p.delta_hz /
                    (p.gamma_factor() * p.ej_hz * mu_rate));
}

} // namespace lzgen

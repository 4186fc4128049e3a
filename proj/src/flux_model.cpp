#include "lzgen/flux_model.hpp"

#include <cmath>

#include "lzgen/constants.hpp"

namespace lzgen {

HermitianMatrix flux_hamiltonian(const FluxParams& p, double dphi_e) {
    p.validate();
    const double diag = p.gamma_factor() * p.ej_hz * (2.0 * pi * dphi_e);
    HermitianMatrix h(2, 2);
    h(0, 0) = -diag;
    h(1, 1) = diag;
    h(0, 1) = -0.5 * p.delta_hz;
    h(1, 0) = -0.5 * p.delta_hz;
    return h;
}

double flux_transition_frequency(const FluxParams& p, double dphi_e) {
    p.validate();
    const double u = 2.0 * p.gamma_factor() * p.ej_hz * (2.0 * pi * dphi_e);
    return std::sqrt(u * u + p.delta_hz * p.delta_hz);
}

} // namespace lzgen

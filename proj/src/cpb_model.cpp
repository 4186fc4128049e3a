#include "lzgen/cpb_model.hpp"

#include <cmath>

#include "lzgen/constants.hpp"

namespace lzgen {

double effective_capacitance(double c, double km_hz, double beta_coeff_hz_f) {
    if (!(c > 0)) throw ValidationError("effective_capacitance: c must be > 0");
    if (km_hz < 0) throw ValidationError("effective_capacitance: km_hz must be >= 0");
    const double beta_hz = beta_coeff_hz_f / c;
    return c / (1.0 + km_hz / beta_hz);
}

double c_sigma(const CpbParams& p) {
    p.validate();
    double cs = p.cj;
    if (p.cg > 0) cs += effective_capacitance(p.cg, p.km_hz, p.beta_coeff_hz_f);
    if (p.co > 0) cs += effective_capacitance(p.co, p.km_hz, p.beta_coeff_hz_f);
    return cs;
}

double cpb_charging_energy_hz(const CpbParams& p) {
    const double cs = c_sigma(p);
    return cooper_pair_charge * cooper_pair_charge / (2.0 * cs * planck_h);
}

HermitianMatrix cpb_hamiltonian_from_eq(double eq_hz, double ej_hz, const ChargeBasis& basis,
                                        double n_g) {
    basis.validate();
    const int dim = basis.dim();
    if (dim < 2) throw ValidationError("cpb_hamiltonian: basis dimension must be >= 2");
    HermitianMatrix h = HermitianMatrix::Zero(dim, dim);
    for (int n = basis.n_min; n <= basis.n_max; ++n) {
        const double d = static_cast<double>(n) - n_g;
        h(basis.index_of(n), basis.index_of(n)) = eq_hz * d * d;
    }
    const double off = -0.5 * ej_hz;
    for (int n = basis.n_min; n < basis.n_max; ++n) {
        h(basis.index_of(n), basis.index_of(n + 1)) = off;
        h(basis.index_of(n + 1), basis.index_of(n)) = off;
    }
    return h;
}

HermitianMatrix cpb_hamiltonian(const CpbParams& p, const ChargeBasis& basis, double n_g) {
    return cpb_hamiltonian_from_eq(cpb_charging_energy_hz(p), p.ej_hz, basis, n_g);
}

double cpb_transition_frequency_from_eq(double eq_hz, double ej_hz, double n_g) {
    const double u = eq_hz * (1.0 - 2.0 * n_g);
    return std::sqrt(ej_hz * ej_hz + u * u);
}

double cpb_transition_frequency(const CpbParams& p, double n_g) {
    return cpb_transition_frequency_from_eq(cpb_charging_energy_hz(p), p.ej_hz, n_g);
}

bool is_hermitian(const HermitianMatrix& h, double rel_tol) {
    if (h.rows() != h.cols()) return false;
    const double scale = h.cwiseAbs().maxCoeff();
    if (scale == 0.0) return true;
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

} // namespace lzgen

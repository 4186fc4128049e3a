#include "lzgen/rates.hpp"

#include <cmath>

#include "lzgen/constants.hpp"
#include "lzgen/cpb_model.hpp"
#include "lzgen/lz_analytics.hpp"

namespace lzgen {

double cpb_gamma1(const CpbParams& p, double c_coupling, double omega) {
    if (!(omega > 0)) throw ValidationError("cpb_gamma1: omega must be > 0");
    if (c_coupling < 0) throw ValidationError("cpb_gamma1: c_coupling must be >= 0");
    const double cs = c_sigma(p);
    return p.r_env * c_coupling * c_coupling * omega * omega / (4.0 * cs);
}

double cpb_gamma_phi(const CpbParams& p, double n_g) {
    const double fq = cpb_charging_energy_hz(p);
    const double fj = p.ej_hz;
    const double u = 1.0 - 2.0 * n_g;
    const double f = std::sqrt(fj * fj + fq * fq * u * u);
    // d(omega)/dn_g and d^2(omega)/dn_g^2 from f(n_g) = sqrt(f_J^2 + f_Q^2 (1-2 n_g)^2)
    const double d1 = -2.0 * pi * 2.0 * fq * fq * u / f;
    const double d2 = 2.0 * pi * 4.0 * fq * fq * fj * fj / (f * f * f);
    const double n2 = p.n_rms * p.n_rms;
    return std::sqrt(n2 * d1 * d1 + 0.75 * n2 * n2 * d2 * d2);
}

double cpb_gamma_phi_approx(const CpbParams& p) {
    return p.n_rms * 2.0 * pi * cpb_charging_energy_hz(p);
}

FluxRates flux_rates(const FluxParams& p, double omega) {
    p.validate();
    if (!(omega > 0)) throw ValidationError("flux_rates: omega must be > 0");
    FluxRates r;
    r.nu_volts = p.ej_hz / 1e9 * 1e-7;
    const double q = p.co * r.nu_volts;
    r.gamma1_o = 2.0 * omega * p.z_env * q * q / hbar;
    r.gamma_phi = p.phi_rms * p.gamma_factor() * 2.0 * pi * p.ej_hz;
    return r;
}

double flux_gamma_f_estimate(const FluxParams& p, double omega) {
    p.validate();
    if (!(omega > 0)) throw ValidationError("flux_gamma_f_estimate: omega must be > 0");
    const double m_ref = 0.015 * flux_quantum / 1e-3;
    const double delta_ref = 4e9, ej_ref = 250e9, omega_ref = 2.0 * pi * 4e9;
    const double md = p.m_coupling / m_ref;
    const double dd = p.delta_hz / delta_ref;
    const double ed = p.ej_hz / ej_ref;
    return 1e3 * md * md * ed * ed * dd * dd * (omega_ref / omega);
}

EfficiencyReport usable_efficiency_cpb(const CpbParams& p, double lambda_rate, double omega) {
    if (!(lambda_rate > 0)) throw ValidationError("usable_efficiency_cpb: lambda must be > 0");
    EfficiencyReport rep;
    const double cg_eff =
        p.cg > 0 ? effective_capacitance(p.cg, p.km_hz, p.beta_coeff_hz_f) : 0.0;
    const double co_eff =
        p.co > 0 ? effective_capacitance(p.co, p.km_hz, p.beta_coeff_hz_f) : 0.0;
    if (!(co_eff > 0)) throw ValidationError("usable_efficiency_cpb: co must be > 0");
    rep.p_ex = cpb_excitation_probability(p, lambda_rate);
    rep.gamma_o = cpb_gamma1(p, co_eff, omega);
    rep.gamma_other = cpb_gamma1(p, cg_eff, omega);
    rep.gamma_nr = p.gamma_nr;
    const double ratio = cg_eff / co_eff;
    rep.eta = rep.p_ex / (1.0 + ratio * ratio + p.gamma_nr / rep.gamma_o);
    rep.t1 = 1.0 / rep.gamma_total();
    rep.gamma_phi = cpb_gamma_phi_approx(p);
    rep.fwhm_hz = rep.gamma2() / pi;
    rep.rep_rate_hz = 1.0 / (5.0 * rep.t1);
    return rep;
}

EfficiencyReport usable_efficiency_flux(const FluxParams& p, double mu_rate, double omega,
                                        bool include_flux_line) {
    EfficiencyReport rep;
    const FluxRates fr = flux_rates(p, omega);
    if (!(fr.gamma1_o > 0)) throw ValidationError("usable_efficiency_flux: co must be > 0");
    rep.p_ex = flux_excitation_probability(p, mu_rate);
    rep.gamma_o = fr.gamma1_o;
    rep.gamma_other = include_flux_line ? flux_gamma_f_estimate(p, omega) : 0.0;
    rep.gamma_nr = p.gamma_nr;
    rep.eta = rep.p_ex * rep.gamma_o / rep.gamma_total();
    rep.t1 = 1.0 / rep.gamma_total();
    rep.gamma_phi = fr.gamma_phi;
    rep.fwhm_hz = rep.gamma2() / pi;
    rep.rep_rate_hz = 1.0 / (5.0 * rep.t1);
    return rep;
}

namespace {

// sinc(x) = sin(pi x)/(pi x); envelope replaces |sin| by its worst case 1
double sinc_abs(double x, SincEval eval) {
    const double px = pi * x;
    if (px == 0.0) return 1.0;
    return eval == SincEval::Envelope ? 1.0 / std::abs(px) : std::abs(std::sin(px) / px);
}

double spectral_leakage_common(SpectralPulse kind, double e_char, double t_r, double period,
                               double omega, double gamma_linewidth, double beta_c,
                               SincEval eval) {
    if (!(omega > 0)) throw ValidationError("spectral_leakage: omega must be > 0");
    if (!(gamma_linewidth > 0))
        throw ValidationError("spectral_leakage: gamma_linewidth must be > 0");
    if (beta_c < 0.0 || beta_c > 1.0)
        throw ValidationError("spectral_leakage: beta_c must be in [0, 1]");
    if (!(t_r > 0)) throw ValidationError("spectral_leakage: t_r must be > 0");
    double p_l = 0.0;
    if (kind == SpectralPulse::Triangle) {
        // window 2 Gamma x duration with the pulse's full rise+fall duration 2 t_r,
        // and average power = pulse energy / duration, the same accounting as the
        // periodic trapezoid below
        const double s = sinc_abs(omega * t_r / 2.0, eval);
        const double s_tri = s * s;
        const double duration = 2.0 * t_r;
        p_l = (2.0 * gamma_linewidth * duration) * (e_char / duration) * s_tri * s_tri;
    } else {
        if (!(period > 0)) throw ValidationError("spectral_leakage: period must be > 0");
        const double s_trap = 0.5 * sinc_abs(omega * period / 4.0, eval);
        p_l = (2.0 * gamma_linewidth * period) * (e_char / period) * s_trap * s_trap;
    }
    return beta_c * p_l / (hbar * omega * gamma_linewidth);
}

} // namespace

double spectral_leakage_cpb(SpectralPulse kind, const CpbParams& p, double t_r, double period,
                            double omega, double gamma_linewidth, double beta_c,
                            SincEval eval) {
    p.validate();
    if (!(p.cg > 0)) throw ValidationError("spectral_leakage_cpb: cg must be > 0");
    const double e_char = cooper_pair_charge * cooper_pair_charge / p.cg;
    return spectral_leakage_common(kind, e_char, t_r, period, omega, gamma_linewidth, beta_c,
                                   eval);
}

double spectral_leakage_flux(SpectralPulse kind, const FluxParams& p, double t_r,
                             double period, double omega, double gamma_linewidth,
                             double beta_c, SincEval eval) {
    p.validate();
    if (!(p.m_coupling > 0))
        throw ValidationError("spectral_leakage_flux: m_coupling must be > 0");
    const double e_char =
        p.ej_hz * planck_h + flux_quantum * flux_quantum / (2.0 * p.m_coupling);
    return spectral_leakage_common(kind, e_char, t_r, period, omega, gamma_linewidth, beta_c,
                                   eval);
}

double thermal_population(double f_hz, double temp_k) {
    if (!(f_hz > 0)) throw ValidationError("thermal_population: f must be > 0");
    if (temp_k < 0) throw ValidationError("thermal_population: temp must be >= 0");
    if (temp_k == 0.0) return 0.0;
    return std::exp(-planck_h * f_hz / (boltzmann_k * temp_k));
}

double protocol_decay_bound(double t_r, double t1) {
    if (!(t_r > 0) || !(t1 > 0))
        throw ValidationError("protocol_decay_bound: t_r and t1 must be > 0");
    return 1.0 - std::exp(-1.5 * t_r / t1);
}

} // namespace lzgen

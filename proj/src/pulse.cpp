#include "lzgen/pulse.hpp"

#include <cmath>

namespace lzgen {

std::string to_string(PulseShape s) {
    switch (s) {
        case PulseShape::Linear: return "linear";
        case PulseShape::GaussianRise: return "gaussian";
        case PulseShape::TanhRise: return "tanh";
        case PulseShape::ExponentialRise: return "exponential";
    }
    return "linear";
}

PulseShape pulse_shape_from_string(const std::string& name) {
    if (name == "linear") return PulseShape::Linear;
    if (name == "gaussian") return PulseShape::GaussianRise;
    if (name == "tanh") return PulseShape::TanhRise;
    if (name == "exponential") return PulseShape::ExponentialRise;
    throw ValidationError("unknown pulse shape: " + name);
}

namespace {
constexpr double kGaussExpArg = 9.0;  // sigma = t_r/3
constexpr double kTanhSlope = 6.0;    // k = t_r/3
} // namespace

double shape_progress(PulseShape s, double tau, double endpoint_ratio) {
    switch (s) {
        case PulseShape::Linear:
            return tau;
        case PulseShape::GaussianRise: {
            const double e9 = std::exp(-kGaussExpArg);
            const double u = 1.0 - tau;
            return (std::exp(-kGaussExpArg * u * u) - e9) / (1.0 - e9);
        }
        case PulseShape::TanhRise: {
            const double t3 = std::tanh(0.5 * kTanhSlope);
            return 0.5 * (1.0 + std::tanh(kTanhSlope * (tau - 0.5)) / t3);
        }
        case PulseShape::ExponentialRise: {
            const double r = endpoint_ratio;
            return (std::pow(r, tau) - 1.0) / (r - 1.0);
        }
    }
    return tau;
}

double shape_progress_derivative(PulseShape s, double tau, double endpoint_ratio) {
    switch (s) {
        case PulseShape::Linear:
            return 1.0;
        case PulseShape::GaussianRise: {
            const double e9 = std::exp(-kGaussExpArg);
            const double u = 1.0 - tau;
            return 2.0 * kGaussExpArg * u * std::exp(-kGaussExpArg * u * u) / (1.0 - e9);
        }
        case PulseShape::TanhRise: {
            const double t3 = std::tanh(0.5 * kTanhSlope);
            const double c = std::cosh(kTanhSlope * (tau - 0.5));
            return 0.5 * kTanhSlope / (t3 * c * c);
        }
        case PulseShape::ExponentialRise: {
            const double r = endpoint_ratio;
            return std::log(r) * std::pow(r, tau) / (r - 1.0);
        }
    }
    return 1.0;
}

void PulseSegment::validate() const {
    if (!(t_r > 0)) throw ValidationError("PulseSegment: t_r must be > 0");
    if (shape == PulseShape::ExponentialRise) {
        if (chi_start == 0.0 || chi_end == 0.0 || chi_start * chi_end < 0.0)
            throw ValidationError(
                "PulseSegment: exponential rise needs same-signed nonzero endpoints");
        if (chi_start == chi_end)
            throw ValidationError("PulseSegment: exponential rise needs distinct endpoints");
    }
}

double PulseSegment::value(double t) const {
    validate();
    if (t < 0.0 || t > t_r) throw ValidationError("PulseSegment: t outside [0, t_r]");
    const double tau = t / t_r;
    if (tau == 0.0) return chi_start;
    if (tau == 1.0) return chi_end;
    const double ratio =
        (shape == PulseShape::ExponentialRise) ? chi_end / chi_start : 0.0;
    return chi_start + (chi_end - chi_start) * shape_progress(shape, tau, ratio);
}

double PulseSegment::derivative(double t) const {
    validate();
    if (t < 0.0 || t > t_r) throw ValidationError("PulseSegment: t outside [0, t_r]");
    const double tau = t / t_r;
    const double ratio =
        (shape == PulseShape::ExponentialRise) ? chi_end / chi_start : 0.0;
    return (chi_end - chi_start) * shape_progress_derivative(shape, tau, ratio) / t_r;
}

CatapultSequence catapult(double chi_i, double chi_f, double chi_0, double t_r,
                          PulseShape shape, double rho) {
    if (!(chi_0 > 0)) throw ValidationError("catapult: chi_0 must be > 0");
    if (!(t_r > 0)) throw ValidationError("catapult: t_r must be > 0");
    if (!(rho > 0.0) || rho > 1.0) throw ValidationError("catapult: rho must be in (0, 1]");
    const double half = 0.5 * chi_0;
    if (std::abs(chi_i) > half || std::abs(chi_f) > half)
        throw ValidationError("catapult: endpoints must lie within [-chi_0/2, chi_0/2]");
    const double h = rho * half;
    CatapultSequence seq;
    seq.chi_i = chi_i;
    seq.chi_f = chi_f;
    seq.chi_0 = chi_0;
    seq.rho = rho;
    seq.t_r = t_r;
    seq.segments = {PulseSegment{shape, chi_i, -h, t_r}, PulseSegment{shape, -h, h, t_r},
                    PulseSegment{shape, h, chi_f, t_r}};
    for (const auto& s : seq.segments) s.validate();
    return seq;
}

double CatapultSequence::value(double t) const {
    if (t < 0.0 || t > duration())
        throw ValidationError("CatapultSequence: t outside [0, 3 t_r]");
    int k = static_cast<int>(t / t_r);
    if (k > 2) k = 2;
    return segments[static_cast<size_t>(k)].value(t - k * t_r);
}

CatapultSequence CatapultSequence::reversed() const {
    CatapultSequence r = *this;
    r.chi_i = chi_f;
    r.chi_f = chi_i;
    r.segments = {segments[2].reversed(), segments[1].reversed(), segments[0].reversed()};
    return r;
}

double effective_rise_time(const PulseSegment& seg, double chi_crossing) {
    seg.validate();
    const double lo = std::min(seg.chi_start, seg.chi_end);
    const double hi = std::max(seg.chi_start, seg.chi_end);
    if (!(chi_crossing > lo && chi_crossing < hi))
        throw ValidationError("effective_rise_time: crossing not strictly between endpoints");
    // trajectory is monotone between endpoints, so bisect for the crossing time
    double ta = 0.0, tb = seg.t_r;
    const bool rising = seg.chi_end > seg.chi_start;
    for (int i = 0; i < 200; ++i) {
        const double tm = 0.5 * (ta + tb);
        const bool below = seg.value(tm) < chi_crossing;
        if (below == rising) ta = tm;
        else tb = tm;
    }
    const double t_star = 0.5 * (ta + tb);
    const double slope = seg.derivative(t_star);
    if (slope == 0.0)
        throw ValidationError("effective_rise_time: zero trajectory derivative at crossing");
    return (seg.chi_end - seg.chi_start) / slope;
}

Drive make_drive(const PulseSegment& seg) {
    seg.validate();
    return Drive{seg.t_r, [seg](double t) { return seg.value(t); }};
}

Drive make_drive(const CatapultSequence& seq) {
    return Drive{seq.duration(), [seq](double t) { return seq.value(t); }};
}

} // namespace lzgen

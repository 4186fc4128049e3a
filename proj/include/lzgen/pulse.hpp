// pulse.hpp — control-parameter trajectories: rise shapes, segments, and the
// three-segment catapult sequence

#pragma once

#include <array>
#include <functional>
#include <string>

#include "lzgen/errors.hpp"

namespace lzgen {

enum class PulseShape { Linear, GaussianRise, TanhRise, ExponentialRise };

std::string to_string(PulseShape s);
PulseShape pulse_shape_from_string(const std::string& name);

// One sweep of the control parameter chi from chi_start to chi_end over [0, t_r].
// Shape constants are fixed: sigma = t_r/3 for the Gaussian rise, k = t_r/3 for tanh.
struct PulseSegment {
    PulseShape shape = PulseShape::Linear;
    double chi_start = 0.0;
    double chi_end = 0.0;
    double t_r = 1e-9;

    void validate() const;

    // chi at time t in [0, t_r]; endpoints are exact
    double value(double t) const;
    // dchi/dt at time t in [0, t_r]
    double derivative(double t) const;

    PulseSegment reversed() const { return {shape, chi_end, chi_start, t_r}; }
};

// Normalized rise progress s(tau), tau in [0,1], and its derivative ds/dtau.
// The exponential shape needs the endpoint ratio r = chi_end/chi_start.
double shape_progress(PulseShape s, double tau, double endpoint_ratio);
double shape_progress_derivative(PulseShape s, double tau, double endpoint_ratio);

// Catapult protocol: pull back from chi_i to -chi0/2, traverse to +chi0/2 at the
// full slew rate, settle to chi_f. Each segment lasts t_r; total duration 3 t_r.
// rho in (0,1] optionally shrinks the traversal range (anti-leakage variant).
struct CatapultSequence {
    std::array<PulseSegment, 3> segments;
    double chi_i = 0.0;
    double chi_f = 0.0;
    double chi_0 = 1.0;
    double rho = 1.0;
    double t_r = 1e-9;

    double duration() const { return 3.0 * t_r; }
    double value(double t) const;
    CatapultSequence reversed() const;
};

CatapultSequence catapult(double chi_i, double chi_f, double chi_0, double t_r,
                          PulseShape shape = PulseShape::Linear, double rho = 1.0);

// Effective rise time: span divided by the trajectory's time-derivative where it
// crosses chi_crossing. Equals t_r exactly for the linear shape.
double effective_rise_time(const PulseSegment& seg, double chi_crossing);

// Uniform drive interface consumed by the propagator.
struct Drive {
    double duration = 0.0;
    std::function<double(double)> chi;
};

Drive make_drive(const PulseSegment& seg);
Drive make_drive(const CatapultSequence& seq);

} // namespace lzgen

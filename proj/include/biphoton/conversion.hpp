#pragma once

#include "biphoton/jsa.hpp"

namespace biphoton {

enum class ChannelKind { Flat, GaussianPhaseMatched };

// Frequency-conversion channel acting on the idler photon. The channel maps
// an input amplitude at frequency w to an output at w + omega_shift, weighted
// by the conversion amplitude evaluated at the output frequency:
//
//   Flat:                 T(w) = t0
//   GaussianPhaseMatched: T(w) = t0 * exp(-(w - omega_peak)^2 / (2 beta^2))
//
// omega_shift may be negative (down-conversion). 0 <= t0 <= 1 so that the
// vacuum coupling sqrt(1 - T^2) stays real.
struct ConversionChannel {
    ChannelKind kind = ChannelKind::Flat;
    double t0 = 1.0;
    double omega_shift = 0.0;
    double beta = 0.0;       // phase-matching bandwidth, GaussianPhaseMatched only
    double omega_peak = 0.0; // output frequency of maximum conversion, GaussianPhaseMatched only

    bool operator==(const ConversionChannel&) const = default;
};

ConversionChannel make_flat_channel(double t0, double omega_shift);
ConversionChannel make_phase_matched_channel(double t0, double omega_shift, double beta,
                                             double omega_peak);

// T evaluated at the post-conversion frequency omega. In [0, t0].
double conversion_amplitude(const ConversionChannel& channel, double omega);

// sqrt(1 - T^2); satisfies T^2 + eta^2 = 1 exactly.
double vacuum_coupling(const ConversionChannel& channel, double omega);

// Converted joint amplitude: the idler axis is translated by omega_shift (no
// resampling) and each column is weighted by the conversion amplitude at its
// new frequency. Output norm <= t0^2 * input norm.
Jsa apply_conversion(const Jsa& jsa, const ConversionChannel& channel);

} // namespace biphoton

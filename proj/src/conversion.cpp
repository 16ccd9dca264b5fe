#include "biphoton/conversion.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {

namespace {

void check_t0(double t0) {
    if (!(t0 >= 0.0 && t0 <= 1.0))
        throw std::invalid_argument("conversion channel: t0 must lie in [0, 1]");
}

} // namespace

ConversionChannel make_flat_channel(double t0, double omega_shift) {
    check_t0(t0);
    return ConversionChannel{ChannelKind::Flat, t0, omega_shift, 0.0, 0.0};
}

ConversionChannel make_phase_matched_channel(double t0, double omega_shift, double beta,
                                             double omega_peak) {
    check_t0(t0);
    if (!(beta > 0.0))
        throw std::invalid_argument("conversion channel: beta must be positive");
    return ConversionChannel{ChannelKind::GaussianPhaseMatched, t0, omega_shift, beta, omega_peak};
}

double conversion_amplitude(const ConversionChannel& channel, double omega) {
    if (channel.kind == ChannelKind::Flat)
        return channel.t0;
    const double d = omega - channel.omega_peak;
    return channel.t0 * std::exp(-d * d / (2.0 * channel.beta * channel.beta));
}

double vacuum_coupling(const ConversionChannel& channel, double omega) {
    const double t = conversion_amplitude(channel, omega);
    return std::sqrt(1.0 - t * t);
}

Jsa apply_conversion(const Jsa& jsa, const ConversionChannel& channel) {
    Jsa out;
    out.grid = jsa.grid;
    out.grid.center_i += channel.omega_shift;
    out.label = jsa.label.empty() ? "converted" : jsa.label + ":converted";
    const std::size_t n = jsa.grid.n;
    out.values.resize(n * n);

    const std::vector<double> wi = out.grid.axis_i_values();
    std::vector<double> weight(n);
    for (std::size_t k = 0; k < n; ++k)
        weight[k] = conversion_amplitude(channel, wi[k]);

    // Identity channel: keep values bit-identical.
    const bool identity = channel.kind == ChannelKind::Flat && channel.t0 == 1.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            out.values[j * n + k] =
                identity ? jsa.values[j * n + k] : weight[k] * jsa.values[j * n + k];
    return out;
}

} // namespace biphoton

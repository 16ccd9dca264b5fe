#pragma once

#include <string>
#include <vector>

namespace biphoton {

enum class TraceKind { TwoTimeSlice, DetectorAveraged, HomRate };

// Unit of the trace values: two-time rates are 1/ps^2, detector-averaged
// traces 1/ps, interference coincidence rates dimensionless.
enum class TraceUnits { PerPsSquared, PerPs, Dimensionless };

struct TraceMeta {
    std::string engine;      // "numeric" or "closed"
    std::string description; // free-text provenance (params, channel, grid)
};

// Sampled real-valued function of one delay variable. Delays are strictly
// increasing and uniformly spaced; values are non-negative up to clamped
// quadrature noise.
struct CorrelationTrace {
    std::vector<double> delays;
    std::vector<double> values;
    TraceKind kind = TraceKind::DetectorAveraged;
    TraceUnits units = TraceUnits::PerPs;
    TraceMeta meta;
};

// Uniform delay grid specification.
struct DelayGrid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 0;

    std::vector<double> sample() const;
};

DelayGrid make_delay_grid(double start, double stop, std::size_t steps);

} // namespace biphoton

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "biphoton/conversion.hpp"
#include "biphoton/correlation.hpp"
#include "biphoton/hom.hpp"
#include "biphoton/source.hpp"
#include "biphoton/trace.hpp"

namespace biphoton {

// Configuration mirrors the JSON document: frequencies in THz, times in ps.
// The raw numbers are kept so serialize/parse round-trips exactly; domain
// objects are derived on demand.

struct SourceSpec {
    double omega_p_thz = 0.0;
    double sigma_p_thz = 0.0;
    double delta_thz = 0.0;
    double sigma_minus_thz = 0.0;
    double tau0_ps = 0.0;

    GaussianSourceParams params() const;
    bool operator==(const SourceSpec&) const = default;
};

struct ChannelSpec {
    ChannelKind kind = ChannelKind::Flat;
    double t0 = 1.0;
    double omega_shift_thz = 0.0;
    std::optional<double> beta_thz;      // null = flat
    double omega_i0_offset_thz = 0.0;    // conversion peak offset from the converted idler center

    ConversionChannel channel(const GaussianSourceParams& source) const;
    bool operator==(const ChannelSpec&) const = default;
};

struct DetectorSpec {
    double t_resolution_ps = 100.0;
    std::size_t quad_order = 64;

    DetectorParams params() const;
    bool operator==(const DetectorSpec&) const = default;
};

struct DelayGridSpec {
    double start_ps = 0.0;
    double stop_ps = 0.0;
    std::size_t steps = 0;

    DelayGrid grid() const;
    bool operator==(const DelayGridSpec&) const = default;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::Omega;
    double start_thz = 0.0;
    double stop_thz = 0.0;
    std::size_t steps = 0;

    bool operator==(const SweepSpec&) const = default;
};

struct ScanSpec {
    DelayGridSpec tau;
    DelayGridSpec tau_t;
    std::optional<SweepSpec> sweep;

    bool operator==(const ScanSpec&) const = default;
};

struct GridSpec {
    std::size_t n = 512;
    double half_width_factor = 6.0;

    bool operator==(const GridSpec&) const = default;
};

enum class OutputFormat { Csv, Svg, Both };

struct OutputSpec {
    std::string dir = ".";
    OutputFormat format = OutputFormat::Csv;
    bool normalize = false;

    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    SourceSpec source;
    ChannelSpec channel;
    DetectorSpec detector;
    ScanSpec scan;
    GridSpec grid;
    OutputSpec output;

    bool operator==(const RunConfig&) const = default;
};

// Strict JSON parsing: unknown keys are rejected with their path, missing
// required keys and constraint violations raise ConfigError naming the
// field. Defaults: grid.n = 512, half_width_factor = 6, quad_order = 64,
// t_resolution_ps = 100, scan windows sized from the source bandwidths.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical JSON document; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

} // namespace biphoton

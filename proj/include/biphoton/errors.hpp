#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

// Configuration document is malformed or violates a constraint. Carries the
// field path (dot notation, e.g. "scan.tau.steps") so the CLI can point at
// the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field_path, const std::string& reason)
        : std::runtime_error(field_path.empty() ? reason : field_path + ": " + reason),
          field_(std::move(field_path)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Time-average quadrature did not converge (doubling the order moved the
// result by more than the accepted tolerance).
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The interference cross term needs spectral samples outside the stored grid
// (window too narrow for the requested frequency shift, or grid spacing not
// commensurate with the shift).
class SupportMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Trace has no interior maximum, so a width cannot be extracted.
class NoPeakError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Interference dip too shallow for a meaningful width measurement.
class ShallowDipError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace biphoton

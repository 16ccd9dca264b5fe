#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biphoton/correlation.hpp"
#include "biphoton/source.hpp"

namespace biphoton {

struct RunConfig; // config.hpp

namespace closed {

// Analytic counterparts of the numeric engines, implemented exactly as
// catalogued, including the entries whose printed form disagrees with the
// numeric oracle. The comparison report exists to document those
// disagreements, so nothing here is silently "fixed".

// Two-time rate. Without beta: the flat-channel Gaussian
//   (2 sp sm t0^2 / pi) exp(-2 sp^2 (2t+tau-tau0)^2) exp(-sm^2 (tau-tau0)^2 / 2).
// With beta: the phase-matched form (catalog id 19), including its bare
// omega_shift^2 factor.
double g2_two_time_closed(const GaussianSourceParams& params, double t0, double t, double tau,
                          double tau0, std::optional<double> beta = std::nullopt,
                          std::optional<double> omega_shift = std::nullopt);

enum class AveragingRegime { Exact, LargeTR, SmallTR };

// Detector-averaged rate. Exact regime: the erf-bracket form (id 14), or the
// phase-matched variant (id 20, verbatim) when beta is given. LargeTR drops
// the window dependence (ids 15 / 21); SmallTR is the linear-in-window form
// (id 16, flat only).
double g2_averaged_closed(const GaussianSourceParams& params, double t0, double tau, double tau0,
                          const DetectorParams& det, AveragingRegime regime,
                          std::optional<double> beta = std::nullopt,
                          std::optional<double> omega_shift = std::nullopt);

// Unconverted reference: (sm / sqrt(2 pi)) exp(-sm^2 tau^2 / 2)  (id 17).
double g2_unconverted_closed(const GaussianSourceParams& params, double tau);

// Coincidence rate of the interferometer. Without beta (id 26):
//   (t0^2 / 8 pi^2) (1 - e^{-(W-delta)^2/(2 sm^2)} e^{-sm^2 (tau_t+tau0)^2/2}).
// With beta: id 27 verbatim.
double hom_rate_closed(const GaussianSourceParams& params, double t0, double tau_t, double tau0,
                       double omega_shift, std::optional<double> beta = std::nullopt);

enum class VisibilityMode { General, AtOmegaEqualsDelta };

// Dip visibility for the phase-matched channel: id 28 (General, including
// its positive-exponent factor) or id 29 (AtOmegaEqualsDelta).
double hom_visibility_closed(const GaussianSourceParams& params, double omega_shift, double beta,
                             VisibilityMode mode);

enum class Verdict { Match, ShapeMatchScaleOff, Mismatch };

std::string to_string(Verdict v);

// One sampled comparison point. eq is the formula catalog id; verdict is the
// per-formula verdict repeated on each of its points.
struct ReportRecord {
    int eq = 0;
    std::string params;
    std::string point;
    double closed = 0.0;
    double numeric = 0.0;
    double rel_dev = 0.0;
    Verdict verdict = Verdict::Match;
};

// Per-formula roll-up: max deviation, least-squares scale of closed onto
// numeric, and the shape correlation used for the scale-off verdict.
struct FormulaSummary {
    int eq = 0;
    std::string name;
    std::string params;
    std::size_t points = 0;
    double max_rel_dev = 0.0;
    double scale = 1.0;
    double shape_correlation = 1.0;
    Verdict verdict = Verdict::Match;
    std::string note;
};

struct ClosedFormReport {
    unsigned seed = 42;
    std::vector<ReportRecord> records;
    std::vector<FormulaSummary> summaries;

    const FormulaSummary* find(int eq) const;

    // Strict serialization: a JSON array of records with fields
    // eq, params, point, closed, numeric, rel_dev, verdict.
    std::string to_json() const;
    // Human-readable table with per-formula notes.
    std::string to_text() const;
};

// Samples every formula applicable to the configured channel against the
// numeric engines: 21 uniform delays across +-4/sigma_minus around the peak
// plus 10 seeded pseudo-random draws. Deterministic for a fixed config.
ClosedFormReport compare_against_oracle(const RunConfig& config);

} // namespace closed
} // namespace biphoton

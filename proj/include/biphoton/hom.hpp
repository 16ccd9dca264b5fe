#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biphoton/conversion.hpp"
#include "biphoton/correlation.hpp"
#include "biphoton/jsa.hpp"
#include "biphoton/trace.hpp"

namespace biphoton {

// Tunable-delay scan for the interferometer. The dip sits at tau_t = -tau0;
// hom_trace warns when the grid spans less than +-5/sigma_minus around it.
struct HomScan {
    DelayGrid tau_t_grid;
    double tau0 = 0.0;
};

struct HomResult {
    CorrelationTrace trace; // kind = HomRate
    double baseline = 0.0;
    double visibility = 0.0;
    double dip_position = 0.0;
};

// Grid for interference runs: spacing-commensurate with the frequency shift
// so the swapped-argument amplitude lands exactly on grid points. The idler
// window center moves by at most half a grid step relative to the amplitude
// peak; half_width gets a one-step margin on top of
// base_factor * max(2 sigma_p, sigma_minus) + |delta - omega_shift|.
FrequencyGrid2D make_hom_grid(const GaussianSourceParams& params, const ConversionChannel& channel,
                              std::size_t n = 512, double base_factor = 6.0);

// Coincidence rate after the 50:50 recombination of the converted idler and
// the delayed signal:
//
//   R_c(tau_t) = (1/8 pi^2) [ sum |f|^2 T(wi+W)^2
//              - Re sum f(ws,wi) f(wi+W, ws-W) T(wi+W) T(ws) e^{-i (wi+W-ws)(tau_t+tau0)} ] dw^2
//
// evaluated on the unconverted amplitude by direct two-dimensional summation
// (W = omega_shift). Requires a commensurate grid wide enough for the
// swapped-argument factor; otherwise throws SupportMismatchError.
double hom_coincidence_numeric(const Jsa& jsa, const ConversionChannel& channel,
                               const GaussianSourceParams& params, double tau_t);

// Rates at arbitrary tunable delays sharing one evaluation pass. No scan
// bookkeeping; used for spot checks and closed-form comparisons.
std::vector<double> hom_rates(const Jsa& jsa, const ConversionChannel& channel,
                              const GaussianSourceParams& params,
                              const std::vector<double>& tau_t);

// Scan of the coincidence rate. Baseline is the mean of the outer 10% of
// samples on each side; visibility = (baseline - min)/baseline; dip position
// by three-point parabolic interpolation. Warns when the minimum falls in
// the outer 20% of the scan.
HomResult hom_trace(const Jsa& jsa, const ConversionChannel& channel,
                    const GaussianSourceParams& params, const HomScan& scan);

// Width of the dip-depth function baseline - R_c, by linear interpolation.
// Requires visibility > 0.05 (ShallowDipError otherwise).
double hom_fwhm(const HomResult& result);

enum class SweepVariable { Omega, Beta };

struct SweepPoint {
    double value = 0.0;
    double visibility = 0.0;
    std::optional<double> fwhm;
    std::string error; // per-point failure, empty on success
};

// Evaluates visibility and dip width across channel variants. Each point
// rebuilds the Gaussian amplitude on its own commensurate grid (n taken from
// jsa.grid); per-point failures are recorded, not fatal. For Omega sweeps of
// phase-matched channels the conversion peak keeps its offset from the
// converted idler center.
std::vector<SweepPoint> visibility_sweep(const Jsa& jsa, const GaussianSourceParams& params,
                                         const ConversionChannel& channel_template,
                                         SweepVariable variable, const std::vector<double>& values,
                                         std::size_t trace_steps = 321);

} // namespace biphoton

#pragma once

#include <atomic>
#include <cstddef>
#include <vector>

#include "biphoton/jsa.hpp"
#include "biphoton/trace.hpp"

namespace biphoton {

// Detector model: rectangular averaging window of length t_resolution (ps)
// and the Gauss-Legendre order used for the time average.
struct DetectorParams {
    double t_resolution = 100.0;
    std::size_t quad_order = 64;

    bool operator==(const DetectorParams&) const = default;
};

DetectorParams make_detector_params(double t_resolution, std::size_t quad_order);

// Two-detector coincidence rate density at detection times (t, t + tau) for
// a converted joint amplitude g, with the signal arm delayed by tau0:
//
//   g2(t, t+tau) = (1/4 pi^2) | sum g(ws, wi) e^{i wi t} e^{i ws (t+tau-tau0)} dw^2 |^2
//
// The idler axis carries the e^{i w t} phase and the signal axis the delayed
// one. Non-negative; units 1/ps^2.
double g2_two_time_numeric(const Jsa& converted, double t, double tau, double tau0);

// Integral of g2_two_time_numeric over t in [-T_R/2, +T_R/2], evaluated by
// Gauss-Legendre quadrature of det.quad_order nodes restricted to the support
// of the integrand. The result is recomputed at twice the order; a relative
// shift above 1e-3 raises QuadratureError. Units 1/ps.
double g2_detector_averaged_numeric(const Jsa& converted, double tau, double tau0,
                                    const DetectorParams& det);

// Detector-averaged trace over a uniform delay grid. Delay points are
// independent and may be evaluated concurrently; output order follows the
// grid. Propagates QuadratureError.
CorrelationTrace g2_trace(const Jsa& converted, const DelayGrid& tau_grid, double tau0,
                          const DetectorParams& det);

// Full width at half maximum by linear interpolation between the bracketing
// samples on each side of the unique interior maximum. Throws NoPeakError if
// the maximum sits on an endpoint or a half-maximum crossing is missing;
// warns if more than one local maximum exceeds 0.9 * max.
double fwhm(const CorrelationTrace& trace);

// Precomputed evaluation state for one converted amplitude; the batch
// engines use it to avoid rebuilding axis and value planes per point.
class TwoTimeEvaluator {
public:
    explicit TwoTimeEvaluator(const Jsa& converted);

    // g2(t, t+tau); tau0 enters only through the signal phase.
    double evaluate(double t, double tau, double tau0) const;

    // Support model for the t-integrand at given tau - tau0.
    double window_center(double tau_minus_tau0) const { return -slope_ * tau_minus_tau0; }
    double window_halfwidth() const { return halfwidth_; }

    // Upper bound on any g2 value, used as an absolute floor when judging
    // quadrature convergence near zero.
    double rate_bound() const { return rate_bound_; }

    double averaged(double tau, double tau0, const DetectorParams& det) const;

private:
    std::size_t n_ = 0;
    double dw_ = 0.0;
    std::vector<double> axis_s_, axis_i_;
    std::vector<double> re_, im_; // im_ empty when the amplitude is real
    double slope_ = 0.5;
    double halfwidth_ = 0.0;
    double rate_bound_ = 0.0;
    mutable std::atomic<bool> alias_warned_{false};
};

} // namespace biphoton

#include "biphoton/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "biphoton/errors.hpp"
#include "biphoton/quadrature.hpp"
#include "biphoton/warnings.hpp"
#include "parallel_for.hpp"

namespace biphoton {

namespace {

constexpr double kQuadRelTol = 1e-3;
constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

// cos/sin of angle * (a0 + k * da) for k = 0..n-1, by complex rotation.
void phase_table(double a0, double da, double angle, std::size_t n, double* c, double* s) {
    double cr = std::cos(a0 * angle);
    double ci = std::sin(a0 * angle);
    const double dr = std::cos(da * angle);
    const double di = std::sin(da * angle);
    for (std::size_t k = 0; k < n; ++k) {
        c[k] = cr;
        s[k] = ci;
        const double t = cr * dr - ci * di;
        ci = cr * di + ci * dr;
        cr = t;
    }
}

} // namespace

DetectorParams make_detector_params(double t_resolution, std::size_t quad_order) {
    if (!(t_resolution > 0.0))
        throw std::invalid_argument("make_detector_params: t_resolution must be positive");
    if (quad_order < 16)
        throw std::invalid_argument("make_detector_params: quad_order must be at least 16");
    return DetectorParams{t_resolution, quad_order};
}

TwoTimeEvaluator::TwoTimeEvaluator(const Jsa& converted) {
    n_ = converted.grid.n;
    dw_ = converted.grid.spacing();
    axis_s_ = converted.grid.axis_s_values();
    axis_i_ = converted.grid.axis_i_values();

    bool real_valued = true;
    for (const auto& v : converted.values)
        if (v.imag() != 0.0) {
            real_valued = false;
            break;
        }
    re_.resize(n_ * n_);
    for (std::size_t idx = 0; idx < re_.size(); ++idx)
        re_[idx] = converted.values[idx].real();
    if (!real_valued) {
        im_.resize(n_ * n_);
        for (std::size_t idx = 0; idx < im_.size(); ++idx)
            im_[idx] = converted.values[idx].imag();
    }

    // Amplitude-weighted spectral moments set the time-domain support: the
    // t-integrand peaks at -slope * (tau - tau0) and its width is governed by
    // the sum-frequency spread.
    const SpectralMoments m = spectral_moments(converted, MomentWeight::Modulus);
    double abs_sum = 0.0;
    for (const auto& v : converted.values)
        abs_sum += std::abs(v);
    rate_bound_ = abs_sum * dw_ * dw_;
    rate_bound_ = rate_bound_ * rate_bound_ / kFourPiSq;

    const double var_sum = m.var_sum();
    if (var_sum > 0.0 && m.var_s > 0.0 && m.var_i > 0.0) {
        slope_ = (m.var_s + m.cov_si) / var_sum;
        const double var_min = std::min(m.var_s, m.var_i);
        halfwidth_ = 12.0 * (1.0 / std::sqrt(2.0 * var_sum) + 1.0 / std::sqrt(2.0 * var_min));
    } else {
        slope_ = 0.5;
        halfwidth_ = dw_ > 0.0 ? 12.0 / dw_ : 1.0;
    }
}

double TwoTimeEvaluator::evaluate(double t, double tau, double tau0) const {
    const std::size_t n = n_;
    std::vector<double> pic(n), pis(n), psc(n), pss(n);
    phase_table(axis_i_[0], dw_, t, n, pic.data(), pis.data());
    phase_table(axis_s_[0], dw_, t + tau - tau0, n, psc.data(), pss.data());

    double sr = 0.0, si = 0.0;
    if (im_.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            const double* row = re_.data() + j * n;
            double rr = 0.0, ri = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                rr += row[k] * pic[k];
                ri += row[k] * pis[k];
            }
            sr += rr * psc[j] - ri * pss[j];
            si += rr * pss[j] + ri * psc[j];
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const double* rowr = re_.data() + j * n;
            const double* rowi = im_.data() + j * n;
            double rr = 0.0, ri = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                rr += rowr[k] * pic[k] - rowi[k] * pis[k];
                ri += rowr[k] * pis[k] + rowi[k] * pic[k];
            }
            sr += rr * psc[j] - ri * pss[j];
            si += rr * pss[j] + ri * psc[j];
        }
    }
    const double scale = dw_ * dw_;
    return (sr * sr + si * si) * scale * scale / kFourPiSq;
}

double TwoTimeEvaluator::averaged(double tau, double tau0, const DetectorParams& det) const {
    const double half_window = 0.5 * det.t_resolution;
    const double tc = window_center(tau - tau0);
    const double w = window_halfwidth();
    double lo = std::max(-half_window, tc - w);
    double hi = std::min(half_window, tc + w);
    // sampling limit of the spectral grid: phases step by dw * t per sample
    const double t_reach = std::max(std::abs(lo), std::abs(hi)) + std::abs(tau - tau0);
    if (dw_ * t_reach > std::numbers::pi && !alias_warned_.exchange(true))
        emit_warning("detector average: time offsets exceed the grid's alias-free range "
                     "(pi/spacing = " + std::to_string(std::numbers::pi / dw_) +
                     " ps); increase the grid size");
    if (!(lo < hi)) {
        // Integrand support lies outside the detector window; probe the
        // nearest edge so tails are still integrated honestly.
        if (tc > 0.0) {
            hi = half_window;
            lo = std::max(-half_window, hi - 2.0 * w);
        } else {
            lo = -half_window;
            hi = std::min(half_window, lo + 2.0 * w);
        }
    }
    auto f = [&](double t) { return evaluate(t, tau, tau0); };
    const double coarse = integrate_gauss_legendre(f, lo, hi, det.quad_order);
    const double fine = integrate_gauss_legendre(f, lo, hi, 2 * det.quad_order);
    const double floor = 1e-12 * rate_bound_ * (hi - lo);
    if (std::abs(fine - coarse) >
        kQuadRelTol * std::max({std::abs(fine), std::abs(coarse), floor}))
        throw QuadratureError("detector average: doubling the quadrature order moved the result by more than " +
                              std::to_string(kQuadRelTol) + " relative at tau = " + std::to_string(tau));
    return fine;
}

double g2_two_time_numeric(const Jsa& converted, double t, double tau, double tau0) {
    return TwoTimeEvaluator(converted).evaluate(t, tau, tau0);
}

double g2_detector_averaged_numeric(const Jsa& converted, double tau, double tau0,
                                    const DetectorParams& det) {
    return TwoTimeEvaluator(converted).averaged(tau, tau0, det);
}

CorrelationTrace g2_trace(const Jsa& converted, const DelayGrid& tau_grid, double tau0,
                          const DetectorParams& det) {
    const TwoTimeEvaluator eval(converted);
    CorrelationTrace trace;
    trace.kind = TraceKind::DetectorAveraged;
    trace.units = TraceUnits::PerPs;
    trace.meta.engine = "numeric";
    trace.meta.description = converted.label;
    trace.delays = tau_grid.sample();
    trace.values.resize(trace.delays.size());
    detail::parallel_for(trace.delays.size(), [&](std::size_t i) {
        trace.values[i] = std::max(eval.averaged(trace.delays[i], tau0, det), 0.0);
    });
    return trace;
}

double fwhm(const CorrelationTrace& trace) {
    const auto& v = trace.values;
    const auto& d = trace.delays;
    if (v.size() < 3)
        throw NoPeakError("fwhm: trace needs at least three samples");
    const std::size_t m =
        static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    if (m == 0 || m + 1 == v.size())
        throw NoPeakError("fwhm: maximum sits on a trace endpoint");
    const double peak = v[m];

    std::size_t prominent = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > 0.9 * peak)
            ++prominent;
    if (prominent > 1)
        emit_warning("fwhm: more than one local maximum above 0.9 of the peak");

    const double half = 0.5 * peak;
    auto interpolate = [&](std::size_t lo, std::size_t hi) {
        return d[lo] + (half - v[lo]) * (d[hi] - d[lo]) / (v[hi] - v[lo]);
    };

    double left = 0.0;
    bool found = false;
    for (std::size_t i = m; i-- > 0;)
        if (v[i] < half) {
            left = interpolate(i, i + 1);
            found = true;
            break;
        }
    if (!found)
        throw NoPeakError("fwhm: half maximum not bracketed on the left");

    double right = 0.0;
    found = false;
    for (std::size_t i = m + 1; i < v.size(); ++i)
        if (v[i] < half) {
            right = interpolate(i, i - 1);
            found = true;
            break;
        }
    if (!found)
        throw NoPeakError("fwhm: half maximum not bracketed on the right");

    return right - left;
}

} // namespace biphoton

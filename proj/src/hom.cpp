#include "biphoton/hom.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "biphoton/errors.hpp"
#include "biphoton/warnings.hpp"
#include "parallel_for.hpp"

namespace biphoton {

namespace {

constexpr double kEightPiSq = 8.0 * std::numbers::pi * std::numbers::pi;

// Shared state for one scan: the cross-term matrix with channel weights and
// index-shifted swapped factor folded in, so each delay costs one phase pass.
class HomEvaluator {
public:
    HomEvaluator(const Jsa& jsa, const ConversionChannel& channel,
                 const GaussianSourceParams& params) {
        n_ = jsa.grid.n;
        dw_ = jsa.grid.spacing();

        const double offset = jsa.grid.center_s - channel.omega_shift - jsa.grid.center_i;
        const double steps = offset / dw_;
        const double rounded = std::round(steps);
        if (std::abs(steps - rounded) > 1e-6)
            throw SupportMismatchError(
                "hom: grid spacing is not commensurate with the frequency shift "
                "(use make_hom_grid)");
        m_ = static_cast<long>(rounded);

        const double required = 6.0 * std::max(2.0 * params.sigma_p, params.sigma_minus) +
                                std::abs(params.delta - channel.omega_shift);
        if (jsa.grid.half_width < required * (1.0 - 1e-9))
            throw SupportMismatchError(
                "hom: grid half_width " + std::to_string(jsa.grid.half_width) +
                " rad/ps is below the " + std::to_string(required) +
                " rad/ps needed for the swapped-argument support");

        const std::vector<double> ws = jsa.grid.axis_s_values();
        const std::vector<double> wi = jsa.grid.axis_i_values();
        std::vector<double> t_i(n_), t_s(n_);
        for (std::size_t k = 0; k < n_; ++k)
            t_i[k] = conversion_amplitude(channel, wi[k] + channel.omega_shift);
        for (std::size_t j = 0; j < n_; ++j)
            t_s[j] = conversion_amplitude(channel, ws[j]);

        bool real_valued = true;
        for (const auto& v : jsa.values)
            if (v.imag() != 0.0) {
                real_valued = false;
                break;
            }

        term1_ = 0.0;
        cr_.assign(n_ * n_, 0.0);
        if (!real_valued)
            ci_.assign(n_ * n_, 0.0);
        const long nn = static_cast<long>(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < n_; ++k) {
                const std::complex<double>& v = jsa.values[j * n_ + k];
                term1_ += std::norm(v) * t_i[k] * t_i[k];
                const long j2 = static_cast<long>(k) - m_;
                const long k2 = static_cast<long>(j) + m_;
                if (j2 < 0 || j2 >= nn || k2 < 0 || k2 >= nn)
                    continue;
                const std::complex<double> c =
                    std::conj(v) * jsa.values[static_cast<std::size_t>(j2) * n_ +
                                              static_cast<std::size_t>(k2)] *
                    (t_i[k] * t_s[j]);
                cr_[j * n_ + k] = c.real();
                if (!real_valued)
                    ci_[j * n_ + k] = c.imag();
            }
        }
        term1_ *= dw_ * dw_;
    }

    double baseline_term() const { return term1_ / kEightPiSq; }

    // R_c at delay tau_prime = tau_t + tau0.
    double rate(double tau_prime) const {
        if (dw_ * std::abs(tau_prime) > std::numbers::pi && !alias_warned_.exchange(true))
            emit_warning("hom: delay exceeds the grid's alias-free range (pi/spacing = " +
                         std::to_string(std::numbers::pi / dw_) + " ps)");
        // phase e^{-i (k - j - m) dw tau'} split into per-index tables
        const std::size_t n = n_;
        const double a = dw_ * tau_prime;
        std::vector<double> ck(n), sk(n);
        double cr = 1.0, ci = 0.0;
        const double dr = std::cos(a), di = std::sin(a);
        for (std::size_t k = 0; k < n; ++k) {
            ck[k] = cr;
            sk[k] = ci;
            const double t = cr * dr - ci * di;
            ci = cr * di + ci * dr;
            cr = t;
        }

        double sum_r = 0.0, sum_i = 0.0; // sum c[j,k] e^{-i(k-j) a}
        if (ci_.empty()) {
            for (std::size_t j = 0; j < n; ++j) {
                const double* row = cr_.data() + j * n;
                double rr = 0.0, ri = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    rr += row[k] * ck[k];
                    ri += row[k] * sk[k];
                }
                // multiply row sum (rr - i ri) by e^{+i j a}
                sum_r += rr * ck[j] + ri * sk[j];
                sum_i += rr * sk[j] - ri * ck[j];
            }
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                const double* rowr = cr_.data() + j * n;
                const double* rowi = ci_.data() + j * n;
                double rr = 0.0, ri = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    // (rowr + i rowi)(ck - i sk)
                    rr += rowr[k] * ck[k] + rowi[k] * sk[k];
                    ri += rowi[k] * ck[k] - rowr[k] * sk[k];
                }
                sum_r += rr * ck[j] - ri * sk[j];
                sum_i += ri * ck[j] + rr * sk[j];
            }
        }
        // remaining e^{+i m a} factor
        const double cm = std::cos(static_cast<double>(m_) * a);
        const double sm = std::sin(static_cast<double>(m_) * a);
        const double cross_r = (sum_r * cm - sum_i * sm) * dw_ * dw_;
        const double cross_i = (sum_r * sm + sum_i * cm) * dw_ * dw_;
        if (std::abs(cross_i) > 1e-10 * std::max(term1_, 1e-300))
            throw std::runtime_error("hom: cross term imaginary residue exceeds 1e-10 of baseline");
        double r = (term1_ - cross_r) / kEightPiSq;
        if (r < 0.0) {
            if (r < -1e-12 * baseline_term())
                throw std::runtime_error("hom: coincidence rate below the negative-noise floor");
            r = 0.0;
        }
        return r;
    }

private:
    std::size_t n_ = 0;
    double dw_ = 0.0;
    long m_ = 0;
    double term1_ = 0.0;
    std::vector<double> cr_, ci_;
    mutable std::atomic<bool> alias_warned_{false};
};

} // namespace

FrequencyGrid2D make_hom_grid(const GaussianSourceParams& params, const ConversionChannel& channel,
                              std::size_t n, double base_factor) {
    const double scale = std::max(2.0 * params.sigma_p, params.sigma_minus);
    const double hw0 = base_factor * scale + std::abs(params.delta - channel.omega_shift);
    // one-step margin: the idler window may shift by half a step to make the
    // shift commensurate
    const double hw = hw0 * (1.0 + 2.0 / static_cast<double>(n - 1));
    const double dw = 2.0 * hw / static_cast<double>(n - 1);
    const double center_s = params.signal_center();
    const double m = std::round((params.delta - channel.omega_shift) / dw);
    const double center_i = center_s - channel.omega_shift - m * dw;
    return make_frequency_grid(center_s, center_i, hw, n);
}

double hom_coincidence_numeric(const Jsa& jsa, const ConversionChannel& channel,
                               const GaussianSourceParams& params, double tau_t) {
    return HomEvaluator(jsa, channel, params).rate(tau_t + params.tau0);
}

std::vector<double> hom_rates(const Jsa& jsa, const ConversionChannel& channel,
                              const GaussianSourceParams& params,
                              const std::vector<double>& tau_t) {
    const HomEvaluator eval(jsa, channel, params);
    std::vector<double> out(tau_t.size());
    detail::parallel_for(tau_t.size(), [&](std::size_t i) {
        out[i] = eval.rate(tau_t[i] + params.tau0);
    });
    return out;
}

HomResult hom_trace(const Jsa& jsa, const ConversionChannel& channel,
                    const GaussianSourceParams& params, const HomScan& scan) {
    const std::vector<double> delays = scan.tau_t_grid.sample();
    if (delays.size() < 10)
        throw std::invalid_argument("hom_trace: scan needs at least 10 samples");
    const double span_needed = 5.0 / params.sigma_minus;
    if (delays.front() > -scan.tau0 - span_needed || delays.back() < -scan.tau0 + span_needed)
        emit_warning("hom_trace: scan covers less than 5/sigma_minus around -tau0; "
                     "the dip may be truncated");

    const HomEvaluator eval(jsa, channel, params);
    HomResult result;
    result.trace.kind = TraceKind::HomRate;
    result.trace.units = TraceUnits::Dimensionless;
    result.trace.meta.engine = "numeric";
    result.trace.meta.description = jsa.label;
    result.trace.delays = delays;
    result.trace.values.resize(delays.size());
    detail::parallel_for(delays.size(), [&](std::size_t i) {
        result.trace.values[i] = eval.rate(delays[i] + scan.tau0);
    });

    const auto& v = result.trace.values;
    const std::size_t n = v.size();
    const std::size_t tail = std::max<std::size_t>(1, n / 10);
    double baseline = 0.0;
    for (std::size_t i = 0; i < tail; ++i)
        baseline += v[i] + v[n - 1 - i];
    baseline /= static_cast<double>(2 * tail);
    result.baseline = baseline;

    const std::size_t imin =
        static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
    if (imin < n / 5 || imin >= n - n / 5)
        emit_warning("hom_trace: minimum falls in the outer 20% of the scan; dip may be truncated");

    result.visibility = baseline > 0.0 ? (baseline - v[imin]) / baseline : 0.0;

    if (imin == 0 || imin + 1 == n) {
        result.dip_position = delays[imin];
    } else {
        // parabola through the three samples around the minimum
        const double y0 = v[imin - 1], y1 = v[imin], y2 = v[imin + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        const double shift = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
        const double h = delays[1] - delays[0];
        result.dip_position = delays[imin] + shift * h;
    }
    return result;
}

double hom_fwhm(const HomResult& result) {
    if (!(result.visibility > 0.05))
        throw ShallowDipError("hom_fwhm: visibility " + std::to_string(result.visibility) +
                              " is too shallow (need > 0.05)");
    CorrelationTrace depth;
    depth.delays = result.trace.delays;
    depth.values.resize(result.trace.values.size());
    for (std::size_t i = 0; i < depth.values.size(); ++i)
        depth.values[i] = result.baseline - result.trace.values[i];
    depth.kind = TraceKind::HomRate;
    depth.units = TraceUnits::Dimensionless;
    return fwhm(depth);
}

std::vector<SweepPoint> visibility_sweep(const Jsa& jsa, const GaussianSourceParams& params,
                                         const ConversionChannel& channel_template,
                                         SweepVariable variable, const std::vector<double>& values,
                                         std::size_t trace_steps) {
    if (values.empty())
        throw std::invalid_argument("visibility_sweep: values must be non-empty");

    // For phase-matched channels the conversion peak follows the converted
    // idler center at a fixed offset.
    const double peak_offset =
        channel_template.kind == ChannelKind::GaussianPhaseMatched
            ? channel_template.omega_peak - (params.idler_center() + channel_template.omega_shift)
            : 0.0;

    std::vector<SweepPoint> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepPoint& point = out[i];
        point.value = values[i];
        try {
            ConversionChannel ch = channel_template;
            if (variable == SweepVariable::Omega) {
                ch.omega_shift = values[i];
                if (ch.kind == ChannelKind::GaussianPhaseMatched)
                    ch.omega_peak = params.idler_center() + ch.omega_shift + peak_offset;
            } else {
                if (ch.kind != ChannelKind::GaussianPhaseMatched)
                    throw std::invalid_argument("visibility_sweep: beta sweep needs a phase-matched channel");
                if (!(values[i] > 0.0))
                    throw std::invalid_argument("visibility_sweep: beta must be positive");
                ch.beta = values[i];
            }
            const FrequencyGrid2D grid = make_hom_grid(params, ch, jsa.grid.n);
            const Jsa sample = gaussian_jsa(params, grid);
            const double span = 8.0 / params.sigma_minus;
            HomScan scan{make_delay_grid(-params.tau0 - span, -params.tau0 + span, trace_steps),
                         params.tau0};
            const HomResult res = hom_trace(sample, ch, params, scan);
            point.visibility = res.visibility;
            try {
                point.fwhm = hom_fwhm(res);
            } catch (const ShallowDipError& e) {
                point.error = e.what();
            }
        } catch (const std::exception& e) {
            point.error = e.what();
        }
    }
    return out;
}

} // namespace biphoton

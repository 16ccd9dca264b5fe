#include "biphoton/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "biphoton/config.hpp"
#include "biphoton/hom.hpp"
#include "biphoton/special_functions.hpp"
#include "biphoton/units.hpp"

namespace biphoton::closed {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

} // namespace

double g2_two_time_closed(const GaussianSourceParams& p, double t0, double t, double tau,
                          double tau0, std::optional<double> beta,
                          std::optional<double> omega_shift) {
    const double sp = p.sigma_p;
    const double sm = p.sigma_minus;
    const double x = tau - tau0;
    const double y = 2.0 * t + x;
    if (!beta) {
        return (2.0 * sp * sm * t0 * t0 / kPi) * std::exp(-2.0 * sp * sp * y * y) *
               std::exp(-0.5 * sm * sm * x * x);
    }
    const double b2 = *beta * *beta;
    const double sp2 = sp * sp;
    const double sm2 = sm * sm;
    const double shift = omega_shift.value_or(0.0);
    const double S = 2.0 * b2 + 4.0 * sp2 + sm2;
    const double num = shift * shift + 16.0 * sp2 * sm2 * (t + x) * (t + x) +
                       8.0 * b2 * sp2 * y * y + 2.0 * b2 * sm2 * x * x;
    return (4.0 * t0 * t0 * b2 * sp * sm / (kPi * S)) * std::exp(-num / (2.0 * S));
}

double g2_averaged_closed(const GaussianSourceParams& p, double t0, double tau, double tau0,
                          const DetectorParams& det, AveragingRegime regime,
                          std::optional<double> beta, std::optional<double> omega_shift) {
    const double sp = p.sigma_p;
    const double sm = p.sigma_minus;
    const double x = tau - tau0;
    const double tr = det.t_resolution;

    if (!beta) {
        const double gauss = std::exp(-0.5 * sm * sm * x * x);
        switch (regime) {
        case AveragingRegime::Exact:
            return (sm * t0 * t0 / (2.0 * kSqrt2Pi)) * gauss *
                   (erf(std::numbers::sqrt2 * sp * (x + tr)) -
                    erf(std::numbers::sqrt2 * sp * (x - tr)));
        case AveragingRegime::LargeTR:
            return (sm * t0 * t0 / kSqrt2Pi) * gauss;
        case AveragingRegime::SmallTR:
            return (tr * sp * sm * t0 * t0 / std::sqrt(kPi)) * gauss;
        }
        throw std::invalid_argument("g2_averaged_closed: bad regime");
    }

    if (regime == AveragingRegime::SmallTR)
        throw std::invalid_argument(
            "g2_averaged_closed: no catalogued small-window form for phase-matched channels");

    const double b2 = *beta * *beta;
    const double sp2 = sp * sp;
    const double sm2 = sm * sm;
    const double shift = omega_shift.value_or(0.0);
    const double S = 2.0 * b2 + 4.0 * sp2 + sm2;
    const double pref = t0 * t0 * b2 * sm / std::sqrt(2.0 * kPi * S * (sm2 + 2.0 * b2));
    const double gauss = std::exp(-shift * shift / (2.0 * S)) *
                         std::exp(-4.0 * x * x * b2 * sm2 * sp2 / (S * (sm2 + 2.0 * b2))) *
                         std::exp(-b2 * sm2 * x * x / S);
    if (regime == AveragingRegime::LargeTR)
        return pref * gauss * 2.0;
    // erf arguments exactly as catalogued (id 20), dimensional oddity included
    const double arg = std::sqrt(2.0 * (sm2 + 2.0 * b2) / S);
    return pref * gauss * (erf(arg * (2.0 * x + tr)) - erf(arg * (2.0 * x - tr)));
}

double g2_unconverted_closed(const GaussianSourceParams& p, double tau) {
    const double sm = p.sigma_minus;
    return (sm / kSqrt2Pi) * std::exp(-0.5 * sm * sm * tau * tau);
}

double hom_rate_closed(const GaussianSourceParams& p, double t0, double tau_t, double tau0,
                       double omega_shift, std::optional<double> beta) {
    const double sm = p.sigma_minus;
    const double sm2 = sm * sm;
    const double d = p.delta;
    const double tp = tau_t + tau0;
    const double eightPiSq = 8.0 * kPi * kPi;
    if (!beta) {
        const double dip = std::exp(-(omega_shift - d) * (omega_shift - d) / (2.0 * sm2)) *
                           std::exp(-0.5 * sm2 * tp * tp);
        return (t0 * t0 / eightPiSq) * (1.0 - dip);
    }
    const double b = *beta;
    const double b2 = b * b;
    const double sp2 = p.sigma_p * p.sigma_p;
    const double S = 4.0 * sp2 + sm2 + 2.0 * b2;
    const double first = std::exp(-2.0 * omega_shift * omega_shift / S) / std::sqrt(S);
    const double second = (b / std::sqrt((b2 + 2.0 * sp2) * (2.0 * b2 + sm2))) *
                          std::exp(-(omega_shift + d) * (omega_shift + d) / (4.0 * (b2 + 2.0 * sp2))) *
                          std::exp(-(omega_shift - d) * (omega_shift - d) / (2.0 * sm2)) *
                          std::exp(-sm2 * b2 * tp * tp / (2.0 * b2 + sm2));
    return (std::numbers::sqrt2 * t0 * t0 * b / eightPiSq) * (first - second);
}

double hom_visibility_closed(const GaussianSourceParams& p, double omega_shift, double beta,
                             VisibilityMode mode) {
    const double sm2 = p.sigma_minus * p.sigma_minus;
    const double sp2 = p.sigma_p * p.sigma_p;
    const double b2 = beta * beta;
    const double S = 4.0 * sp2 + sm2 + 2.0 * b2;
    const double pref = beta * std::sqrt(S) / std::sqrt((b2 + 2.0 * sp2) * (2.0 * b2 + sm2));
    const double w = omega_shift;
    if (mode == VisibilityMode::General) {
        const double d = p.delta;
        return pref * std::exp(-(w + d) * (w + d) / (4.0 * (b2 + 2.0 * sp2))) *
               std::exp(-(w - d) * (w - d) / (2.0 * sm2)) * std::exp(2.0 * w * w / S);
    }
    return pref * std::exp(-(8.0 * sp2 + sm2 + 4.0 * b2) * w * w / (S * (b2 + 2.0 * sp2)));
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Match:
        return "match";
    case Verdict::ShapeMatchScaleOff:
        return "shape-match-scale-off";
    case Verdict::Mismatch:
        return "mismatch";
    }
    return "?";
}

const FormulaSummary* ClosedFormReport::find(int eq) const {
    for (const auto& s : summaries)
        if (s.eq == eq)
            return &s;
    return nullptr;
}

std::string ClosedFormReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        arr.push_back({{"eq", r.eq},
                       {"params", r.params},
                       {"point", r.point},
                       {"closed", r.closed},
                       {"numeric", r.numeric},
                       {"rel_dev", r.rel_dev},
                       {"verdict", to_string(r.verdict)}});
    }
    return arr.dump(2) + "\n";
}

std::string ClosedFormReport::to_text() const {
    std::ostringstream out;
    out << "closed-form vs numeric-oracle comparison (seed " << seed << ")\n";
    out << "  id  name                         pts  max_rel_dev  scale        shape_corr  verdict\n";
    char line[256];
    for (const auto& s : summaries) {
        std::snprintf(line, sizeof(line), "  %-3d %-28s %-4zu %-12.3e %-12.6g %-11.8f %s\n",
                      s.eq, s.name.c_str(), s.points, s.max_rel_dev, s.scale,
                      s.shape_correlation, to_string(s.verdict).c_str());
        out << line;
    }
    bool any_note = false;
    for (const auto& s : summaries)
        if (!s.note.empty()) {
            if (!any_note) {
                out << "notes:\n";
                any_note = true;
            }
            out << "  [" << s.eq << "] " << s.note << "\n";
        }
    return out.str();
}

namespace {

// Deterministic uniform draw independent of library distribution details.
double uniform(std::mt19937& rng, double lo, double hi) {
    const double u = static_cast<double>(rng()) / 4294967296.0;
    return lo + (hi - lo) * u;
}

struct PointSet {
    std::vector<std::pair<std::string, std::pair<double, double>>> entries; // label -> (closed, numeric)
};

struct Comparison {
    int eq;
    std::string name;
    std::string params;
    std::string note;
    std::vector<std::string> labels;
    std::vector<double> closed;
    std::vector<double> numeric;
};

void summarize(const Comparison& c, ClosedFormReport& report) {
    FormulaSummary s;
    s.eq = c.eq;
    s.name = c.name;
    s.params = c.params;
    s.points = c.closed.size();
    s.note = c.note;

    double max_rel = 0.0;
    for (std::size_t i = 0; i < c.closed.size(); ++i) {
        const double denom = std::max(std::abs(c.closed[i]), std::abs(c.numeric[i]));
        const double rel = denom > 0.0 ? std::abs(c.closed[i] - c.numeric[i]) / denom : 0.0;
        max_rel = std::max(max_rel, rel);
    }
    s.max_rel_dev = max_rel;

    double sc = 0.0, sn = 0.0;
    for (std::size_t i = 0; i < c.closed.size(); ++i) {
        sc += c.closed[i] * c.numeric[i];
        sn += c.numeric[i] * c.numeric[i];
    }
    s.scale = sn > 0.0 ? sc / sn : 1.0;

    // Pearson correlation of the sampled shapes
    const std::size_t n = c.closed.size();
    double mc = 0.0, mn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mc += c.closed[i];
        mn += c.numeric[i];
    }
    mc /= static_cast<double>(n);
    mn /= static_cast<double>(n);
    double num = 0.0, vc = 0.0, vn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (c.closed[i] - mc) * (c.numeric[i] - mn);
        vc += (c.closed[i] - mc) * (c.closed[i] - mc);
        vn += (c.numeric[i] - mn) * (c.numeric[i] - mn);
    }
    s.shape_correlation = (vc > 0.0 && vn > 0.0) ? num / std::sqrt(vc * vn) : 1.0;

    if (s.max_rel_dev < 1e-3)
        s.verdict = Verdict::Match;
    else if (n >= 3 && s.shape_correlation > 0.9999)
        s.verdict = Verdict::ShapeMatchScaleOff;
    else
        s.verdict = Verdict::Mismatch;

    for (std::size_t i = 0; i < n; ++i) {
        ReportRecord r;
        r.eq = c.eq;
        r.params = c.params;
        r.point = c.labels[i];
        r.closed = c.closed[i];
        r.numeric = c.numeric[i];
        const double denom = std::max(std::abs(r.closed), std::abs(r.numeric));
        r.rel_dev = denom > 0.0 ? std::abs(r.closed - r.numeric) / denom : 0.0;
        r.verdict = s.verdict;
        report.records.push_back(r);
    }
    report.summaries.push_back(s);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

ClosedFormReport compare_against_oracle(const RunConfig& config) {
    ClosedFormReport report;
    report.seed = 42;
    std::mt19937 rng(report.seed);

    const GaussianSourceParams params = config.source.params();
    const ConversionChannel channel = config.channel.channel(params);
    const DetectorParams det = config.detector.params();
    const double t0c = channel.t0;
    const double tau0 = params.tau0;
    const double sm = params.sigma_minus;
    const double sp = params.sigma_p;
    const bool phase_matched = channel.kind == ChannelKind::GaussianPhaseMatched;
    const std::optional<double> beta =
        phase_matched ? std::optional<double>(channel.beta) : std::nullopt;
    const std::optional<double> shift =
        phase_matched ? std::optional<double>(channel.omega_shift) : std::nullopt;

    const FrequencyGrid2D grid =
        make_default_grid(params, config.grid.n, config.grid.half_width_factor);
    const Jsa jsa = gaussian_jsa(params, grid);
    const Jsa converted = apply_conversion(jsa, channel);
    const TwoTimeEvaluator eval(converted);

    // 21 delays across +-4/sigma_minus around the averaged peak
    std::vector<double> delays(21);
    for (std::size_t i = 0; i < delays.size(); ++i)
        delays[i] = tau0 - 4.0 / sm + static_cast<double>(i) * (8.0 / sm) / 20.0;

    const std::string chan_params =
        "t0=" + fmt(t0c) + " omega_shift=" + fmt(channel.omega_shift) +
        (phase_matched ? " beta=" + fmt(channel.beta) : "");

    // Two-time form (flat: id 11, phase-matched: id 19), sampled on the ridge
    // plus seeded off-ridge draws.
    {
        Comparison c;
        c.eq = phase_matched ? 19 : 11;
        c.name = phase_matched ? "two_time_phase_matched" : "two_time_flat";
        c.params = chan_params;
        auto add = [&](double t, double tau) {
            c.labels.push_back("t=" + fmt(t) + " tau=" + fmt(tau));
            c.closed.push_back(g2_two_time_closed(params, t0c, t, tau, tau0, beta, shift));
            c.numeric.push_back(eval.evaluate(t, tau, tau0));
        };
        for (double tau : delays)
            add(0.5 * (tau0 - tau), tau);
        for (int i = 0; i < 10; ++i) {
            const double tau = tau0 + uniform(rng, -2.0, 2.0) / sm;
            const double t = 0.5 * (tau0 - tau) + uniform(rng, -0.25, 0.25) / sp;
            add(t, tau);
        }
        if (phase_matched)
            c.note = "all t/tau dependence matches the oracle; the bare frequency-shift factor "
                     "exp(-shift^2/(2(2b^2+4sp^2+sm^2))) corresponds to a conversion window "
                     "centered half a shift below the converted line, while the engine centers "
                     "it on the converted line (no shift dependence)";
        summarize(c, report);
    }

    // Detector-averaged exact form (flat: id 14, phase-matched: id 20).
    {
        Comparison c;
        c.eq = phase_matched ? 20 : 14;
        c.name = phase_matched ? "averaged_phase_matched" : "averaged_window_exact";
        c.params = chan_params + " T_R=" + fmt(det.t_resolution);
        for (double tau : delays) {
            c.labels.push_back("tau=" + fmt(tau));
            c.closed.push_back(
                g2_averaged_closed(params, t0c, tau, tau0, det, AveragingRegime::Exact, beta, shift));
            c.numeric.push_back(eval.averaged(tau, tau0, det));
        }
        if (phase_matched)
            c.note = "erf arguments as catalogued lack the pump-bandwidth factor and weight the "
                     "delay as (2x +- T_R); with a saturating window only the scale offset from "
                     "the frequency-shift factor remains";
        summarize(c, report);
    }

    // Wide-window limit (flat: id 15, phase-matched: id 21).
    {
        Comparison c;
        c.eq = phase_matched ? 21 : 15;
        c.name = phase_matched ? "averaged_wide_window_pm" : "averaged_wide_window";
        const DetectorParams wide = make_detector_params(50.0 / sp, det.quad_order);
        c.params = chan_params + " T_R=" + fmt(wide.t_resolution);
        for (double tau : delays) {
            c.labels.push_back("tau=" + fmt(tau));
            c.closed.push_back(g2_averaged_closed(params, t0c, tau, tau0, wide,
                                                  AveragingRegime::LargeTR, beta, shift));
            c.numeric.push_back(eval.averaged(tau, tau0, wide));
        }
        if (phase_matched)
            c.note = "proportional form; amplitude fixed by the saturated exact form, scale "
                     "offset from the frequency-shift factor as for the two-time case";
        summarize(c, report);
    }

    // Narrow-window limit (flat only: id 16). Sampled inside its own
    // validity regime (both the window and the pump-scaled delay small), so
    // the verdict isolates the constant-prefactor question from plain
    // regime error.
    if (!phase_matched) {
        Comparison c;
        c.eq = 16;
        c.name = "averaged_narrow_window";
        const DetectorParams narrow = make_detector_params(1e-3 / sp, det.quad_order);
        const double span = std::min(4.0 / sm, 0.125 / sp);
        c.params = chan_params + " T_R=" + fmt(narrow.t_resolution) + " |tau-tau0|<=" + fmt(span);
        for (std::size_t i = 0; i < 21; ++i) {
            const double tau = tau0 - span + static_cast<double>(i) * (2.0 * span) / 20.0;
            c.labels.push_back("tau=" + fmt(tau));
            c.closed.push_back(g2_averaged_closed(params, t0c, tau, tau0, narrow,
                                                  AveragingRegime::SmallTR));
            c.numeric.push_back(eval.averaged(tau, tau0, narrow));
        }
        c.note = "window-linearity holds; the oracle prefactor is (2/pi) T_R sp sm t0^2 "
                 "against the catalogued 1/sqrt(pi) constant (ratio 2/sqrt(pi) = 1.128 at "
                 "the peak), and the catalogued form also drops the exp(-2 sp^2 x^2) "
                 "envelope that narrows the oracle shape";
        summarize(c, report);
    }

    // Unconverted reference (id 17): no conversion, no path delay, wide window.
    {
        Comparison c;
        c.eq = 17;
        c.name = "unconverted_reference";
        c.params = "T_R=" + fmt(50.0 / sp);
        GaussianSourceParams p0 = params;
        p0.tau0 = 0.0;
        const Jsa plain = apply_conversion(jsa, make_flat_channel(1.0, 0.0));
        const TwoTimeEvaluator eval0(plain);
        const DetectorParams wide = make_detector_params(50.0 / sp, det.quad_order);
        for (double tau : delays) {
            const double shifted = tau - tau0; // reference trace is centered on zero
            c.labels.push_back("tau=" + fmt(shifted));
            c.closed.push_back(g2_unconverted_closed(p0, shifted));
            c.numeric.push_back(eval0.averaged(shifted, 0.0, wide));
        }
        summarize(c, report);
    }

    // Interference rate (flat: id 26, phase-matched: id 27) across the dip.
    {
        Comparison c;
        c.eq = phase_matched ? 27 : 26;
        c.name = phase_matched ? "hom_rate_phase_matched" : "hom_rate_flat";
        c.params = chan_params;
        const FrequencyGrid2D hgrid = make_hom_grid(params, channel, config.grid.n);
        const Jsa hjsa = gaussian_jsa(params, hgrid);
        const std::vector<double> tau_ts = make_delay_grid(-tau0 - 4.0 / sm, -tau0 + 4.0 / sm, 21).sample();
        const std::vector<double> rates = hom_rates(hjsa, channel, params, tau_ts);
        for (std::size_t i = 0; i < tau_ts.size(); ++i) {
            c.labels.push_back("tau_t=" + fmt(tau_ts[i]));
            c.closed.push_back(
                hom_rate_closed(params, t0c, tau_ts[i], tau0, channel.omega_shift, beta));
            c.numeric.push_back(rates[i]);
        }
        if (phase_matched)
            c.note = "dip shape in the tunable delay matches the oracle; baseline and dip "
                     "amplitude carry the catalogued frequency-shift factors exp(-2 shift^2/S) "
                     "and exp(-(shift+delta)^2/(4(b^2+2sp^2))), where the engine has none and "
                     "exp(-(shift-delta)^2/(4(b^2+2sp^2))) respectively";
        summarize(c, report);
    }

    // Visibility closed forms (phase-matched only): id 28 across seeded beta
    // draws, id 29 at the matched shift.
    if (phase_matched) {
        {
            Comparison c;
            c.eq = 28;
            c.name = "hom_visibility_general";
            c.params = chan_params;
            for (int i = 0; i < 10; ++i) {
                const double b = uniform(rng, 0.5, 20.0) * sm;
                ConversionChannel ch = channel;
                ch.beta = b;
                const FrequencyGrid2D hgrid = make_hom_grid(params, ch, config.grid.n);
                const Jsa hjsa = gaussian_jsa(params, hgrid);
                const HomScan scan{make_delay_grid(-tau0 - 8.0 / sm, -tau0 + 8.0 / sm, 161), tau0};
                const HomResult res = hom_trace(hjsa, ch, params, scan);
                c.labels.push_back("beta=" + fmt(b));
                c.closed.push_back(
                    hom_visibility_closed(params, ch.omega_shift, b, VisibilityMode::General));
                c.numeric.push_back(res.visibility);
            }
            c.note = "catalogued visibility carries exp(-(shift+delta)^2/(4(b^2+2sp^2))) and a "
                     "positive exp(+2 shift^2/S) factor; the oracle visibility is "
                     "b sqrt(S)/sqrt((2b^2+sm^2)(b^2+2sp^2)) "
                     "exp(-(shift-delta)^2/(2sm^2)) exp(-(shift-delta)^2/(4(b^2+2sp^2)))";
            summarize(c, report);
        }
        {
            Comparison c;
            c.eq = 29;
            c.name = "hom_visibility_matched_shift";
            c.params = "t0=" + fmt(t0c) + " omega_shift=delta=" + fmt(params.delta) +
                       " beta=" + fmt(channel.beta);
            ConversionChannel ch = channel;
            ch.omega_shift = params.delta;
            ch.omega_peak = params.idler_center() + ch.omega_shift;
            const FrequencyGrid2D hgrid = make_hom_grid(params, ch, config.grid.n);
            const Jsa hjsa = gaussian_jsa(params, hgrid);
            const HomScan scan{make_delay_grid(-tau0 - 8.0 / sm, -tau0 + 8.0 / sm, 161), tau0};
            const HomResult res = hom_trace(hjsa, ch, params, scan);
            c.labels.push_back("beta=" + fmt(channel.beta));
            c.closed.push_back(hom_visibility_closed(params, params.delta, channel.beta,
                                                     VisibilityMode::AtOmegaEqualsDelta));
            c.numeric.push_back(res.visibility);
            const double via28 = hom_visibility_closed(params, params.delta, channel.beta,
                                                       VisibilityMode::General);
            c.note = "matched-shift form is not the general form at shift=delta (general gives " +
                     fmt(via28) + " here); oracle visibility " + fmt(res.visibility);
            summarize(c, report);
        }
    }

    return report;
}

} // namespace biphoton::closed

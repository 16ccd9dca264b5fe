#include "biphoton/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <utility>
#include <vector>

#include "biphoton/closed_forms.hpp"
#include "biphoton/csv.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/hom.hpp"
#include "biphoton/svg.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

namespace fs = std::filesystem;

struct OutputBundle {
    std::vector<std::pair<std::string, std::string>> files; // path -> contents

    void add(const fs::path& dir, const std::string& name, std::string contents) {
        files.emplace_back((dir / name).string(), std::move(contents));
    }
    void flush() const {
        for (const auto& [path, contents] : files)
            write_file_atomic(path, contents);
    }
};

double rel_dev(double a, double b) {
    const double denom = std::max(std::abs(a), std::abs(b));
    return denom > 0.0 ? std::abs(a - b) / denom : 0.0;
}

std::vector<double> normalized(const std::vector<double>& v) {
    const double peak = *std::max_element(v.begin(), v.end());
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = peak > 0.0 ? v[i] / peak : v[i];
    return out;
}

bool wants_csv(OutputFormat f) { return f != OutputFormat::Svg; }
bool wants_svg(OutputFormat f) { return f != OutputFormat::Csv; }

SvgPlot plot_from_csv(const CsvTable& table, std::string title, std::string x_label,
                      std::string y_label) {
    SvgPlot plot;
    plot.title = std::move(title);
    plot.x_label = std::move(x_label);
    plot.y_label = std::move(y_label);
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        SvgSeries s;
        s.name = table.header[c];
        s.x = table.columns[0];
        s.y = table.columns[c];
        plot.series.push_back(std::move(s));
    }
    return plot;
}

std::optional<double> closed_visibility(const RunConfig& cfg, const GaussianSourceParams& params,
                                        SweepVariable variable, double value_angular) {
    if (cfg.channel.kind == ChannelKind::Flat) {
        if (variable == SweepVariable::Beta)
            return std::nullopt;
        const double d = value_angular - params.delta;
        return std::exp(-d * d / (2.0 * params.sigma_minus * params.sigma_minus));
    }
    const double shift = variable == SweepVariable::Omega
                             ? value_angular
                             : thz_to_angular(cfg.channel.omega_shift_thz);
    const double beta =
        variable == SweepVariable::Beta ? value_angular : thz_to_angular(*cfg.channel.beta_thz);
    return closed::hom_visibility_closed(params, shift, beta, closed::VisibilityMode::General);
}

int run_g2(const RunConfig& cfg, bool normalize, std::ostream& out, OutputBundle& bundle,
           const fs::path& dir) {
    const GaussianSourceParams params = cfg.source.params();
    const ConversionChannel channel = cfg.channel.channel(params);
    const DetectorParams det = cfg.detector.params();
    const FrequencyGrid2D grid = make_default_grid(params, cfg.grid.n, cfg.grid.half_width_factor);
    const Jsa converted = apply_conversion(gaussian_jsa(params, grid), channel);
    const CorrelationTrace trace = g2_trace(converted, cfg.scan.tau.grid(), params.tau0, det);

    const bool pm = channel.kind == ChannelKind::GaussianPhaseMatched;
    std::vector<double> closed_vals(trace.delays.size());
    for (std::size_t i = 0; i < trace.delays.size(); ++i)
        closed_vals[i] = closed::g2_averaged_closed(
            params, channel.t0, trace.delays[i], params.tau0, det, closed::AveragingRegime::Exact,
            pm ? std::optional<double>(channel.beta) : std::nullopt,
            pm ? std::optional<double>(channel.omega_shift) : std::nullopt);

    std::vector<double> devs(trace.delays.size());
    for (std::size_t i = 0; i < devs.size(); ++i)
        devs[i] = rel_dev(trace.values[i], closed_vals[i]);

    CsvTable table;
    if (normalize) {
        table.header = {"tau_ps", "g2_numeric_norm", "g2_closed_norm", "rel_dev"};
        table.columns = {trace.delays, normalized(trace.values), normalized(closed_vals), devs};
    } else {
        table.header = {"tau_ps", "g2_numeric_per_ps", "g2_closed_per_ps", "rel_dev"};
        table.columns = {trace.delays, trace.values, closed_vals, devs};
    }
    if (wants_csv(cfg.output.format))
        bundle.add(dir, "g2_trace.csv", table.to_string());
    if (wants_svg(cfg.output.format))
        bundle.add(dir, "g2_trace.svg",
                   plot_from_csv(table, "detector-averaged coincidence rate", "tau_ps",
                                 normalize ? "normalized rate" : "rate_per_ps")
                       .to_string());

    const double width = fwhm(trace);
    const std::size_t peak =
        std::max_element(trace.values.begin(), trace.values.end()) - trace.values.begin();
    out << "g2: peak at tau = " << format_csv_number(trace.delays[peak])
        << " ps, fwhm = " << format_csv_number(width)
        << " ps, max rel_dev vs closed form = "
        << format_csv_number(*std::max_element(devs.begin(), devs.end())) << "\n";
    return 0;
}

int run_hom(const RunConfig& cfg, bool normalize, std::ostream& out, OutputBundle& bundle,
            const fs::path& dir) {
    const GaussianSourceParams params = cfg.source.params();
    const ConversionChannel channel = cfg.channel.channel(params);
    const FrequencyGrid2D grid =
        make_hom_grid(params, channel, cfg.grid.n, cfg.grid.half_width_factor);
    const Jsa jsa = gaussian_jsa(params, grid);
    const HomScan scan{cfg.scan.tau_t.grid(), params.tau0};
    const HomResult result = hom_trace(jsa, channel, params, scan);

    const bool pm = channel.kind == ChannelKind::GaussianPhaseMatched;
    std::vector<double> closed_vals(result.trace.delays.size());
    for (std::size_t i = 0; i < closed_vals.size(); ++i)
        closed_vals[i] = closed::hom_rate_closed(
            params, channel.t0, result.trace.delays[i], params.tau0, channel.omega_shift,
            pm ? std::optional<double>(channel.beta) : std::nullopt);

    std::vector<double> devs(closed_vals.size());
    for (std::size_t i = 0; i < devs.size(); ++i)
        devs[i] = rel_dev(result.trace.values[i], closed_vals[i]);

    CsvTable table;
    if (normalize) {
        std::vector<double> vn = result.trace.values, cn = closed_vals;
        for (auto& v : vn)
            v /= result.baseline;
        const double cb = closed_vals.empty() ? 1.0 : std::max(closed_vals.front(), closed_vals.back());
        for (auto& v : cn)
            v /= cb;
        table.header = {"tau_t_ps", "rate_numeric_norm", "rate_closed_norm", "rel_dev"};
        table.columns = {result.trace.delays, vn, cn, devs};
    } else {
        table.header = {"tau_t_ps", "rate_numeric", "rate_closed", "rel_dev"};
        table.columns = {result.trace.delays, result.trace.values, closed_vals, devs};
    }
    if (wants_csv(cfg.output.format))
        bundle.add(dir, "hom_trace.csv", table.to_string());
    if (wants_svg(cfg.output.format))
        bundle.add(dir, "hom_trace.svg",
                   plot_from_csv(table, "coincidence rate vs tunable delay", "tau_t_ps",
                                 normalize ? "normalized rate" : "rate")
                       .to_string());

    out << "hom: visibility = " << format_csv_number(result.visibility)
        << ", dip_position_ps = " << format_csv_number(result.dip_position)
        << ", baseline = " << format_csv_number(result.baseline);
    try {
        out << ", dip_fwhm_ps = " << format_csv_number(hom_fwhm(result));
    } catch (const ShallowDipError&) {
        out << ", dip_fwhm_ps = n/a (dip too shallow)";
    }
    out << "\n";
    return 0;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, OutputBundle& bundle, const fs::path& dir,
              const std::string& base_name = "sweep") {
    if (!cfg.scan.sweep)
        throw ConfigError("scan.sweep", "required for the sweep command");
    const SweepSpec& spec = *cfg.scan.sweep;
    const GaussianSourceParams params = cfg.source.params();
    const ConversionChannel channel = cfg.channel.channel(params);

    std::vector<double> values_thz(spec.steps);
    for (std::size_t i = 0; i < spec.steps; ++i)
        values_thz[i] = spec.start_thz + (spec.stop_thz - spec.start_thz) *
                                             static_cast<double>(i) /
                                             static_cast<double>(spec.steps - 1);
    std::vector<double> values(spec.steps);
    for (std::size_t i = 0; i < spec.steps; ++i)
        values[i] = thz_to_angular(values_thz[i]);

    const Jsa seed = gaussian_jsa(params, make_hom_grid(params, channel, cfg.grid.n));
    const std::vector<SweepPoint> points =
        visibility_sweep(seed, params, channel, spec.variable, values);

    std::vector<double> vis(points.size()), vis_closed(points.size()), widths(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        vis[i] = points[i].visibility;
        const auto cv = closed_visibility(cfg, params, spec.variable, values[i]);
        vis_closed[i] = cv ? *cv : std::nan("");
        widths[i] = points[i].fwhm ? *points[i].fwhm : std::nan("");
        if (!points[i].error.empty())
            out << "sweep point " << format_csv_number(values_thz[i]) << ": " << points[i].error
                << "\n";
    }

    CsvTable table;
    table.header = {spec.variable == SweepVariable::Omega ? "omega_thz" : "beta_thz",
                    "visibility_numeric", "visibility_closed", "fwhm_ps"};
    table.columns = {values_thz, vis, vis_closed, widths};
    if (wants_csv(cfg.output.format))
        bundle.add(dir, base_name + ".csv", table.to_string());
    if (wants_svg(cfg.output.format))
        bundle.add(dir, base_name + ".svg",
                   plot_from_csv(table, "dip visibility sweep", table.header[0], "visibility")
                       .to_string());
    out << "sweep: " << points.size() << " points, max visibility = "
        << format_csv_number(*std::max_element(vis.begin(), vis.end())) << "\n";
    return 0;
}

int run_compare(const RunConfig& cfg, std::ostream& out, OutputBundle& bundle,
                const fs::path& dir) {
    const closed::ClosedFormReport report = closed::compare_against_oracle(cfg);
    bundle.add(dir, "closed_form_report.json", report.to_json());
    bundle.add(dir, "closed_form_report.txt", report.to_text());
    out << report.to_text();
    return 0;
}

int run_figure(const RunConfig& cfg, FigureId id, std::ostream& out, OutputBundle& bundle,
               const fs::path& dir) {
    const std::string name = figure_name(id);
    const GaussianSourceParams params = cfg.source.params();
    const ConversionChannel channel = cfg.channel.channel(params);
    const DetectorParams det = cfg.detector.params();

    bundle.add(dir, name + "_meta.json", serialize_config(cfg));

    if (id == FigureId::Fig2) {
        const FrequencyGrid2D grid =
            make_default_grid(params, cfg.grid.n, cfg.grid.half_width_factor);
        const Jsa jsa = gaussian_jsa(params, grid);
        const CorrelationTrace conv =
            g2_trace(apply_conversion(jsa, channel), cfg.scan.tau.grid(), params.tau0, det);
        const CorrelationTrace orig =
            g2_trace(apply_conversion(jsa, make_flat_channel(1.0, 0.0)), cfg.scan.tau.grid(), 0.0,
                     det);
        CsvTable table;
        table.header = {"tau_ps", "g2_converted_norm", "g2_original_norm"};
        table.columns = {conv.delays, normalized(conv.values), normalized(orig.values)};
        if (wants_csv(cfg.output.format))
            bundle.add(dir, name + ".csv", table.to_string());
        if (wants_svg(cfg.output.format))
            bundle.add(dir, name + ".svg",
                       plot_from_csv(table, "averaged coincidence rate, converted vs original",
                                     "tau_ps", "normalized rate")
                           .to_string());
        const std::size_t pc =
            std::max_element(conv.values.begin(), conv.values.end()) - conv.values.begin();
        const std::size_t po =
            std::max_element(orig.values.begin(), orig.values.end()) - orig.values.begin();
        out << name << ": converted peak at " << format_csv_number(conv.delays[pc])
            << " ps (fwhm " << format_csv_number(fwhm(conv)) << " ps), original peak at "
            << format_csv_number(orig.delays[po]) << " ps (fwhm " << format_csv_number(fwhm(orig))
            << " ps)\n";
        return 0;
    }

    if (id == FigureId::Fig4a) {
        const FrequencyGrid2D grid =
            make_hom_grid(params, channel, cfg.grid.n, cfg.grid.half_width_factor);
        const Jsa jsa = gaussian_jsa(params, grid);
        const HomScan scan{cfg.scan.tau_t.grid(), params.tau0};
        const HomResult shifted = hom_trace(jsa, channel, params, scan);

        const ConversionChannel plain = make_flat_channel(channel.t0, 0.0);
        const FrequencyGrid2D grid0 =
            make_hom_grid(params, plain, cfg.grid.n, cfg.grid.half_width_factor);
        const HomResult original = hom_trace(gaussian_jsa(params, grid0), plain, params, scan);

        auto scale = [](const HomResult& r) {
            std::vector<double> v = r.trace.values;
            for (auto& x : v)
                x /= r.baseline;
            return v;
        };
        CsvTable table;
        table.header = {"tau_t_ps", "rate_shifted_norm", "rate_original_norm"};
        table.columns = {shifted.trace.delays, scale(shifted), scale(original)};
        if (wants_csv(cfg.output.format))
            bundle.add(dir, name + ".csv", table.to_string());
        if (wants_svg(cfg.output.format))
            bundle.add(dir, name + ".svg",
                       plot_from_csv(table, "coincidence dip, shifted vs original", "tau_t_ps",
                                     "normalized rate")
                           .to_string());
        out << name << ": shifted visibility = " << format_csv_number(shifted.visibility)
            << " (dip at " << format_csv_number(shifted.dip_position)
            << " ps, fwhm " << format_csv_number(hom_fwhm(shifted))
            << " ps), original visibility = " << format_csv_number(original.visibility) << "\n";
        return 0;
    }

    if (id == FigureId::Fig4b || id == FigureId::Fig5a)
        return run_sweep(cfg, out, bundle, dir, name);

    // Fig5b: dip width and averaged-trace width against the phase-matching
    // bandwidth.
    const SweepSpec& spec = *cfg.scan.sweep;
    std::vector<double> values_thz(spec.steps);
    for (std::size_t i = 0; i < spec.steps; ++i)
        values_thz[i] = spec.start_thz + (spec.stop_thz - spec.start_thz) *
                                             static_cast<double>(i) /
                                             static_cast<double>(spec.steps - 1);
    std::vector<double> values(spec.steps);
    for (std::size_t i = 0; i < spec.steps; ++i)
        values[i] = thz_to_angular(values_thz[i]);

    const Jsa seed = gaussian_jsa(params, make_hom_grid(params, channel, cfg.grid.n));
    const std::vector<SweepPoint> points =
        visibility_sweep(seed, params, channel, SweepVariable::Beta, values);

    std::vector<double> hom_widths(points.size()), g2_widths(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        hom_widths[i] = points[i].fwhm ? *points[i].fwhm : std::nan("");

        ConversionChannel ch = channel;
        ch.beta = values[i];
        const FrequencyGrid2D grid =
            make_default_grid(params, cfg.grid.n, cfg.grid.half_width_factor);
        const Jsa converted = apply_conversion(gaussian_jsa(params, grid), ch);
        // window sized from the expected width so the half-maximum crossings
        // stay inside the scan at every beta
        const double b2 = values[i] * values[i];
        const double sm2 = params.sigma_minus * params.sigma_minus;
        const double width_est =
            2.0 * std::sqrt(std::log(2.0) * (2.0 * b2 + sm2)) / (values[i] * params.sigma_minus);
        const DelayGrid tau_grid =
            make_delay_grid(params.tau0 - 1.25 * width_est, params.tau0 + 1.25 * width_est, 61);
        g2_widths[i] = fwhm(g2_trace(converted, tau_grid, params.tau0, det));
    }

    CsvTable table;
    table.header = {"beta_thz", "fwhm_hom_ps", "fwhm_g2_ps"};
    table.columns = {values_thz, hom_widths, g2_widths};
    if (wants_csv(cfg.output.format))
        bundle.add(dir, name + ".csv", table.to_string());
    if (wants_svg(cfg.output.format))
        bundle.add(dir, name + ".svg",
                   plot_from_csv(table, "widths vs phase-matching bandwidth", "beta_thz",
                                 "fwhm_ps")
                       .to_string());
    out << name << ": " << points.size() << " points\n";
    return 0;
}

} // namespace

std::optional<Command> parse_command_name(const std::string& name) {
    if (name == "g2")
        return Command::G2;
    if (name == "hom")
        return Command::Hom;
    if (name == "sweep")
        return Command::Sweep;
    if (name == "compare")
        return Command::Compare;
    if (name == "figure")
        return Command::Figure;
    return std::nullopt;
}

std::optional<FigureId> parse_figure_id(const std::string& name) {
    if (name == "fig2")
        return FigureId::Fig2;
    if (name == "fig4a")
        return FigureId::Fig4a;
    if (name == "fig4b")
        return FigureId::Fig4b;
    if (name == "fig5a")
        return FigureId::Fig5a;
    if (name == "fig5b")
        return FigureId::Fig5b;
    return std::nullopt;
}

std::string figure_name(FigureId id) {
    switch (id) {
    case FigureId::Fig2:
        return "fig2";
    case FigureId::Fig4a:
        return "fig4a";
    case FigureId::Fig4b:
        return "fig4b";
    case FigureId::Fig5a:
        return "fig5a";
    case FigureId::Fig5b:
        return "fig5b";
    }
    return "fig?";
}

RunConfig default_config() {
    return parse_config_text(R"({
  "source": {"omega_p_thz": 400, "sigma_p_thz": 0.1, "delta_thz": 2,
             "sigma_minus_thz": 1, "tau0_ps": 0.2},
  "channel": {"kind": "flat", "t0": 1, "omega_shift_thz": 1.95}
})");
}

void apply_figure_preset(FigureId id, RunConfig& config) {
    // Shared source: 1 THz pair bandwidth, pump a tenth of it, 2 THz
    // separation, 0.2 ps path delay, 100 ps detector window.
    config.source = SourceSpec{400.0, 0.1, 2.0, 1.0, 0.2};
    config.detector.t_resolution_ps = 100.0;
    config.output.format = OutputFormat::Both;
    const double sm = thz_to_angular(config.source.sigma_minus_thz);
    const double tau0 = config.source.tau0_ps;
    config.scan.tau = DelayGridSpec{tau0 - 4.0 / sm, tau0 + 4.0 / sm, 201};
    config.scan.tau_t = DelayGridSpec{-tau0 - 8.0 / sm, -tau0 + 8.0 / sm, 321};
    config.scan.sweep.reset();

    switch (id) {
    case FigureId::Fig2:
        config.channel = ChannelSpec{ChannelKind::Flat, 1.0, 1.95, std::nullopt, 0.0};
        config.scan.tau = DelayGridSpec{-0.65, 0.85, 301};
        break;
    case FigureId::Fig4a:
        config.channel = ChannelSpec{ChannelKind::Flat, 1.0, 1.95, std::nullopt, 0.0};
        break;
    case FigureId::Fig4b:
        config.channel = ChannelSpec{ChannelKind::Flat, 1.0, 1.95, std::nullopt, 0.0};
        // shift swept across delta +- 3 sigma_minus
        config.scan.sweep = SweepSpec{SweepVariable::Omega, -1.0, 5.0, 61};
        break;
    case FigureId::Fig5a:
        config.channel = ChannelSpec{ChannelKind::GaussianPhaseMatched, 1.0, 1.95, 2.0, 0.0};
        config.scan.sweep = SweepSpec{SweepVariable::Beta, 0.5, 20.0, 40};
        break;
    case FigureId::Fig5b:
        config.channel = ChannelSpec{ChannelKind::GaussianPhaseMatched, 1.0, 1.95, 2.0, 0.0};
        config.scan.sweep = SweepSpec{SweepVariable::Beta, 0.5, 20.0, 14};
        break;
    }
}

int run_command(Command command, RunConfig config, std::optional<FigureId> figure,
                const CommandOverrides& overrides, std::ostream& out, std::ostream& err) {
    try {
        if (command == Command::Figure) {
            if (!figure)
                throw ConfigError("figure", "the figure command needs --figure <id>");
            apply_figure_preset(*figure, config);
        }
        if (overrides.out_dir)
            config.output.dir = *overrides.out_dir;
        if (overrides.format)
            config.output.format = *overrides.format;
        if (overrides.normalize)
            config.output.normalize = true;
        if (overrides.grid_n) {
            if (*overrides.grid_n < 8 || *overrides.grid_n % 2 != 0)
                throw ConfigError("grid.n", "must be even and at least 8");
            config.grid.n = *overrides.grid_n;
        }

        const fs::path dir(config.output.dir);
        OutputBundle bundle;
        int status = 0;
        switch (command) {
        case Command::G2:
            status = run_g2(config, config.output.normalize, out, bundle, dir);
            break;
        case Command::Hom:
            status = run_hom(config, config.output.normalize, out, bundle, dir);
            break;
        case Command::Sweep:
            status = run_sweep(config, out, bundle, dir);
            break;
        case Command::Compare:
            status = run_compare(config, out, bundle, dir);
            break;
        case Command::Figure:
            status = run_figure(config, *figure, out, bundle, dir);
            break;
        }
        bundle.flush();
        return status;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace biphoton

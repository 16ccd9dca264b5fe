#include "biphoton/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

using nlohmann::json;

std::string join_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

// Wraps one JSON object: typed getters with field-path errors, unknown-key
// rejection on destruction of the scope.
class ObjectReader {
public:
    ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected a JSON object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        auto it = node_.find(key);
        return it != node_.end() && !it->is_null();
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return *node_.find(key);
    }

    double number(const std::string& key) {
        require(key);
        const json& v = raw(key);
        if (!v.is_number())
            throw ConfigError(join_path(path_, key), "expected a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    std::size_t positive_integer(const std::string& key, std::size_t fallback) {
        if (!has(key))
            return fallback;
        const json& v = raw(key);
        if (!v.is_number_integer() || v.get<long long>() <= 0)
            throw ConfigError(join_path(path_, key), "expected a positive integer");
        return static_cast<std::size_t>(v.get<long long>());
    }

    std::string string_or(const std::string& key, const std::string& fallback) {
        if (!has(key))
            return fallback;
        const json& v = raw(key);
        if (!v.is_string())
            throw ConfigError(join_path(path_, key), "expected a string");
        return v.get<std::string>();
    }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key))
            return fallback;
        const json& v = raw(key);
        if (!v.is_boolean())
            throw ConfigError(join_path(path_, key), "expected a boolean");
        return v.get<bool>();
    }

    ObjectReader object(const std::string& key) {
        require(key);
        return ObjectReader(raw(key), join_path(path_, key));
    }

    std::optional<ObjectReader> optional_object(const std::string& key) {
        if (!has(key))
            return std::nullopt;
        return ObjectReader(raw(key), join_path(path_, key));
    }

    void require(const std::string& key) {
        if (node_.find(key) == node_.end())
            throw ConfigError(join_path(path_, key), "required key is missing");
        if (node_.find(key)->is_null())
            throw ConfigError(join_path(path_, key), "must not be null");
        seen_.insert(key);
    }

    // Call once all keys of interest were touched.
    void reject_unknown() const {
        for (auto it = node_.begin(); it != node_.end(); ++it)
            if (seen_.find(it.key()) == seen_.end())
                throw ConfigError(path_.empty() ? "<root>" : path_,
                                  "unknown key '" + it.key() + "'");
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

DelayGridSpec read_delay_grid(ObjectReader r, const std::string& path) {
    DelayGridSpec g;
    g.start_ps = r.number("start_ps");
    g.stop_ps = r.number("stop_ps");
    const json& steps = r.raw("steps");
    if (!steps.is_number_integer() || steps.get<long long>() < 2)
        throw ConfigError(path + ".steps", "expected an integer >= 2");
    g.steps = static_cast<std::size_t>(steps.get<long long>());
    if (!(g.start_ps < g.stop_ps))
        throw ConfigError(path + ".start_ps", "start_ps must be below stop_ps");
    r.reject_unknown();
    return g;
}

} // namespace

GaussianSourceParams SourceSpec::params() const {
    return make_source_params(thz_to_angular(omega_p_thz), thz_to_angular(sigma_p_thz),
                              thz_to_angular(delta_thz), thz_to_angular(sigma_minus_thz), tau0_ps);
}

ConversionChannel ChannelSpec::channel(const GaussianSourceParams& source) const {
    if (kind == ChannelKind::Flat)
        return make_flat_channel(t0, thz_to_angular(omega_shift_thz));
    const double shift = thz_to_angular(omega_shift_thz);
    const double peak = source.idler_center() + shift + thz_to_angular(omega_i0_offset_thz);
    return make_phase_matched_channel(t0, shift, thz_to_angular(*beta_thz), peak);
}

DetectorParams DetectorSpec::params() const {
    return make_detector_params(t_resolution_ps, quad_order);
}

DelayGrid DelayGridSpec::grid() const {
    return make_delay_grid(start_ps, stop_ps, steps);
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("not valid JSON: ") + e.what());
    }

    ObjectReader root(doc, "");
    RunConfig cfg;

    {
        ObjectReader src = root.object("source");
        cfg.source.omega_p_thz = src.number("omega_p_thz");
        cfg.source.sigma_p_thz = src.number("sigma_p_thz");
        cfg.source.delta_thz = src.number("delta_thz");
        cfg.source.sigma_minus_thz = src.number("sigma_minus_thz");
        cfg.source.tau0_ps = src.number_or("tau0_ps", 0.0);
        if (!(cfg.source.sigma_p_thz > 0.0))
            throw ConfigError("source.sigma_p_thz", "must be positive");
        if (!(cfg.source.sigma_minus_thz > 0.0))
            throw ConfigError("source.sigma_minus_thz", "must be positive");
        src.reject_unknown();
    }

    if (auto ch = root.optional_object("channel")) {
        const std::string kind = ch->string_or("kind", ch->has("beta_thz") ? "gaussian_phase_matched" : "flat");
        if (kind == "flat")
            cfg.channel.kind = ChannelKind::Flat;
        else if (kind == "gaussian_phase_matched")
            cfg.channel.kind = ChannelKind::GaussianPhaseMatched;
        else
            throw ConfigError("channel.kind", "expected \"flat\" or \"gaussian_phase_matched\"");
        cfg.channel.t0 = ch->number_or("t0", 1.0);
        if (!(cfg.channel.t0 >= 0.0 && cfg.channel.t0 <= 1.0))
            throw ConfigError("channel.t0", "must lie in [0, 1]");
        cfg.channel.omega_shift_thz = ch->number_or("omega_shift_thz", 0.0);
        if (ch->has("beta_thz")) {
            const double beta = ch->number("beta_thz");
            if (!(beta > 0.0))
                throw ConfigError("channel.beta_thz", "must be positive");
            cfg.channel.beta_thz = beta;
        }
        cfg.channel.omega_i0_offset_thz = ch->number_or("omega_i0_offset_thz", 0.0);
        if (cfg.channel.kind == ChannelKind::GaussianPhaseMatched && !cfg.channel.beta_thz)
            throw ConfigError("channel.beta_thz", "required for gaussian_phase_matched channels");
        if (cfg.channel.kind == ChannelKind::Flat && cfg.channel.beta_thz)
            throw ConfigError("channel.beta_thz", "must be null for flat channels");
        ch->reject_unknown();
    }

    if (auto det = root.optional_object("detector")) {
        cfg.detector.t_resolution_ps = det->number_or("t_resolution_ps", 100.0);
        if (!(cfg.detector.t_resolution_ps > 0.0))
            throw ConfigError("detector.t_resolution_ps", "must be positive");
        cfg.detector.quad_order = det->positive_integer("quad_order", 64);
        if (cfg.detector.quad_order < 16)
            throw ConfigError("detector.quad_order", "must be at least 16");
        det->reject_unknown();
    }

    // Default scan windows derived from the source: the averaged peak sits at
    // tau0, the dip at -tau0, both with width ~1/sigma_minus.
    const double tau0 = cfg.source.tau0_ps;
    const double sm = thz_to_angular(cfg.source.sigma_minus_thz);
    cfg.scan.tau = DelayGridSpec{tau0 - 4.0 / sm, tau0 + 4.0 / sm, 201};
    cfg.scan.tau_t = DelayGridSpec{-tau0 - 8.0 / sm, -tau0 + 8.0 / sm, 321};
    if (auto scan = root.optional_object("scan")) {
        if (scan->has("tau"))
            cfg.scan.tau = read_delay_grid(scan->object("tau"), "scan.tau");
        if (scan->has("tau_t"))
            cfg.scan.tau_t = read_delay_grid(scan->object("tau_t"), "scan.tau_t");
        if (scan->has("sweep")) {
            ObjectReader sw = scan->object("sweep");
            SweepSpec spec;
            const std::string var = sw.string_or("variable", "omega");
            if (var == "omega")
                spec.variable = SweepVariable::Omega;
            else if (var == "beta")
                spec.variable = SweepVariable::Beta;
            else
                throw ConfigError("scan.sweep.variable", "expected \"omega\" or \"beta\"");
            spec.start_thz = sw.number("start_thz");
            spec.stop_thz = sw.number("stop_thz");
            const json& steps = sw.raw("steps");
            if (!steps.is_number_integer() || steps.get<long long>() < 2)
                throw ConfigError("scan.sweep.steps", "expected an integer >= 2");
            spec.steps = static_cast<std::size_t>(steps.get<long long>());
            if (!(spec.start_thz < spec.stop_thz))
                throw ConfigError("scan.sweep.start_thz", "start_thz must be below stop_thz");
            sw.reject_unknown();
            cfg.scan.sweep = spec;
        }
        scan->reject_unknown();
    }

    if (auto grid = root.optional_object("grid")) {
        cfg.grid.n = grid->positive_integer("n", 512);
        if (cfg.grid.n < 8 || cfg.grid.n % 2 != 0)
            throw ConfigError("grid.n", "must be even and at least 8");
        cfg.grid.half_width_factor = grid->number_or("half_width_factor", 6.0);
        if (!(cfg.grid.half_width_factor > 0.0))
            throw ConfigError("grid.half_width_factor", "must be positive");
        grid->reject_unknown();
    }

    if (auto out = root.optional_object("output")) {
        cfg.output.dir = out->string_or("dir", ".");
        const std::string fmt = out->string_or("format", "csv");
        if (fmt == "csv")
            cfg.output.format = OutputFormat::Csv;
        else if (fmt == "svg")
            cfg.output.format = OutputFormat::Svg;
        else if (fmt == "both")
            cfg.output.format = OutputFormat::Both;
        else
            throw ConfigError("output.format", "expected \"csv\", \"svg\" or \"both\"");
        cfg.output.normalize = out->boolean_or("normalize", false);
        out->reject_unknown();
    }

    root.reject_unknown();

    // Surface warnings from the domain constructors early.
    cfg.source.params();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("", "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& c) {
    json doc;
    doc["source"] = {{"omega_p_thz", c.source.omega_p_thz},
                     {"sigma_p_thz", c.source.sigma_p_thz},
                     {"delta_thz", c.source.delta_thz},
                     {"sigma_minus_thz", c.source.sigma_minus_thz},
                     {"tau0_ps", c.source.tau0_ps}};
    json ch = {{"kind", c.channel.kind == ChannelKind::Flat ? "flat" : "gaussian_phase_matched"},
               {"t0", c.channel.t0},
               {"omega_shift_thz", c.channel.omega_shift_thz},
               {"omega_i0_offset_thz", c.channel.omega_i0_offset_thz}};
    if (c.channel.beta_thz)
        ch["beta_thz"] = *c.channel.beta_thz;
    doc["channel"] = ch;
    doc["detector"] = {{"t_resolution_ps", c.detector.t_resolution_ps},
                       {"quad_order", c.detector.quad_order}};
    json scan = {{"tau",
                  {{"start_ps", c.scan.tau.start_ps},
                   {"stop_ps", c.scan.tau.stop_ps},
                   {"steps", c.scan.tau.steps}}},
                 {"tau_t",
                  {{"start_ps", c.scan.tau_t.start_ps},
                   {"stop_ps", c.scan.tau_t.stop_ps},
                   {"steps", c.scan.tau_t.steps}}}};
    if (c.scan.sweep)
        scan["sweep"] = {{"variable", c.scan.sweep->variable == SweepVariable::Omega ? "omega" : "beta"},
                         {"start_thz", c.scan.sweep->start_thz},
                         {"stop_thz", c.scan.sweep->stop_thz},
                         {"steps", c.scan.sweep->steps}};
    doc["scan"] = scan;
    doc["grid"] = {{"n", c.grid.n}, {"half_width_factor", c.grid.half_width_factor}};
    doc["output"] = {{"dir", c.output.dir},
                     {"format", c.output.format == OutputFormat::Csv
                                    ? "csv"
                                    : (c.output.format == OutputFormat::Svg ? "svg" : "both")},
                     {"normalize", c.output.normalize}};
    return doc.dump(2) + "\n";
}

} // namespace biphoton

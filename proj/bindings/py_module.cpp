#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <sstream>
#include <vector>

#include "biphoton/closed_forms.hpp"
#include "biphoton/commands.hpp"
#include "biphoton/config.hpp"
#include "biphoton/conversion.hpp"
#include "biphoton/correlation.hpp"
#include "biphoton/hom.hpp"
#include "biphoton/jsa.hpp"
#include "biphoton/units.hpp"

namespace py = pybind11;
using namespace biphoton;

PYBIND11_MODULE(_biphoton, m) {
    m.doc() = "converted photon-pair correlation and interference simulator";

    m.def("thz_to_angular", &thz_to_angular, py::arg("f_thz"));
    m.def("angular_to_thz", &angular_to_thz, py::arg("omega"));

    py::class_<FrequencyGrid2D>(m, "FrequencyGrid2D")
        .def_readonly("center_s", &FrequencyGrid2D::center_s)
        .def_readonly("center_i", &FrequencyGrid2D::center_i)
        .def_readonly("half_width", &FrequencyGrid2D::half_width)
        .def_readonly("n", &FrequencyGrid2D::n)
        .def("spacing", &FrequencyGrid2D::spacing)
        .def("axis_s", &FrequencyGrid2D::axis_s_values)
        .def("axis_i", &FrequencyGrid2D::axis_i_values);
    m.def("make_frequency_grid", &make_frequency_grid, py::arg("center_s"), py::arg("center_i"),
          py::arg("half_width"), py::arg("n"));

    py::class_<GaussianSourceParams>(m, "GaussianSourceParams")
        .def_readonly("omega_p", &GaussianSourceParams::omega_p)
        .def_readonly("sigma_p", &GaussianSourceParams::sigma_p)
        .def_readonly("delta", &GaussianSourceParams::delta)
        .def_readonly("sigma_minus", &GaussianSourceParams::sigma_minus)
        .def_readonly("tau0", &GaussianSourceParams::tau0)
        .def("signal_center", &GaussianSourceParams::signal_center)
        .def("idler_center", &GaussianSourceParams::idler_center);
    m.def("make_source_params", &make_source_params, py::arg("omega_p"), py::arg("sigma_p"),
          py::arg("delta"), py::arg("sigma_minus"), py::arg("tau0"));
    m.def("correlation_coefficient", &correlation_coefficient);

    py::class_<Jsa>(m, "Jsa")
        .def_readonly("grid", &Jsa::grid)
        .def_readonly("label", &Jsa::label)
        .def_property_readonly("values", [](const Jsa& j) { return j.values; });
    m.def("make_default_grid", &make_default_grid, py::arg("params"), py::arg("n") = 512,
          py::arg("half_width_factor") = 6.0);
    m.def("gaussian_jsa", &gaussian_jsa, py::arg("params"), py::arg("grid"));
    m.def("jsa_norm", &jsa_norm);

    py::enum_<ChannelKind>(m, "ChannelKind")
        .value("Flat", ChannelKind::Flat)
        .value("GaussianPhaseMatched", ChannelKind::GaussianPhaseMatched);
    py::class_<ConversionChannel>(m, "ConversionChannel")
        .def_readonly("kind", &ConversionChannel::kind)
        .def_readonly("t0", &ConversionChannel::t0)
        .def_readonly("omega_shift", &ConversionChannel::omega_shift)
        .def_readonly("beta", &ConversionChannel::beta)
        .def_readonly("omega_peak", &ConversionChannel::omega_peak);
    m.def("make_flat_channel", &make_flat_channel, py::arg("t0"), py::arg("omega_shift"));
    m.def("make_phase_matched_channel", &make_phase_matched_channel, py::arg("t0"),
          py::arg("omega_shift"), py::arg("beta"), py::arg("omega_peak"));
    m.def("conversion_amplitude", &conversion_amplitude);
    m.def("vacuum_coupling", &vacuum_coupling);
    m.def("apply_conversion", &apply_conversion);

    py::class_<DetectorParams>(m, "DetectorParams")
        .def_readonly("t_resolution", &DetectorParams::t_resolution)
        .def_readonly("quad_order", &DetectorParams::quad_order);
    m.def("make_detector_params", &make_detector_params, py::arg("t_resolution"),
          py::arg("quad_order") = 64);

    py::class_<CorrelationTrace>(m, "CorrelationTrace")
        .def_readonly("delays", &CorrelationTrace::delays)
        .def_readonly("values", &CorrelationTrace::values);
    py::class_<DelayGrid>(m, "DelayGrid")
        .def_readonly("start", &DelayGrid::start)
        .def_readonly("stop", &DelayGrid::stop)
        .def_readonly("steps", &DelayGrid::steps);
    m.def("make_delay_grid", &make_delay_grid, py::arg("start"), py::arg("stop"), py::arg("steps"));

    m.def("g2_two_time_numeric", &g2_two_time_numeric, py::arg("converted"), py::arg("t"),
          py::arg("tau"), py::arg("tau0"));
    m.def("g2_detector_averaged_numeric", &g2_detector_averaged_numeric, py::arg("converted"),
          py::arg("tau"), py::arg("tau0"), py::arg("detector"));
    m.def("g2_trace", &g2_trace, py::arg("converted"), py::arg("tau_grid"), py::arg("tau0"),
          py::arg("detector"), py::call_guard<py::gil_scoped_release>());
    m.def("fwhm", &fwhm);

    py::class_<HomScan>(m, "HomScan")
        .def(py::init([](const DelayGrid& g, double tau0) {
                 return HomScan{g, tau0};
             }),
             py::arg("tau_t_grid"), py::arg("tau0"));
    py::class_<HomResult>(m, "HomResult")
        .def_readonly("trace", &HomResult::trace)
        .def_readonly("baseline", &HomResult::baseline)
        .def_readonly("visibility", &HomResult::visibility)
        .def_readonly("dip_position", &HomResult::dip_position);
    m.def("make_hom_grid", &make_hom_grid, py::arg("params"), py::arg("channel"),
          py::arg("n") = 512, py::arg("base_factor") = 6.0);
    m.def("hom_coincidence_numeric", &hom_coincidence_numeric);
    m.def("hom_rates", &hom_rates, py::call_guard<py::gil_scoped_release>());
    m.def("hom_trace", &hom_trace, py::call_guard<py::gil_scoped_release>());
    m.def("hom_fwhm", &hom_fwhm);

    py::enum_<SweepVariable>(m, "SweepVariable")
        .value("Omega", SweepVariable::Omega)
        .value("Beta", SweepVariable::Beta);
    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("value", &SweepPoint::value)
        .def_readonly("visibility", &SweepPoint::visibility)
        .def_readonly("fwhm", &SweepPoint::fwhm)
        .def_readonly("error", &SweepPoint::error);
    m.def("visibility_sweep", &visibility_sweep, py::arg("jsa"), py::arg("params"),
          py::arg("channel_template"), py::arg("variable"), py::arg("values"),
          py::arg("trace_steps") = 321, py::call_guard<py::gil_scoped_release>());

    auto closed_mod = m.def_submodule("closed", "analytic counterparts of the numeric engines");
    py::enum_<closed::AveragingRegime>(closed_mod, "AveragingRegime")
        .value("Exact", closed::AveragingRegime::Exact)
        .value("LargeTR", closed::AveragingRegime::LargeTR)
        .value("SmallTR", closed::AveragingRegime::SmallTR);
    py::enum_<closed::VisibilityMode>(closed_mod, "VisibilityMode")
        .value("General", closed::VisibilityMode::General)
        .value("AtOmegaEqualsDelta", closed::VisibilityMode::AtOmegaEqualsDelta);
    closed_mod.def("g2_two_time", &closed::g2_two_time_closed, py::arg("params"), py::arg("t0"),
                   py::arg("t"), py::arg("tau"), py::arg("tau0"),
                   py::arg("beta") = std::nullopt, py::arg("omega_shift") = std::nullopt);
    closed_mod.def("g2_averaged", &closed::g2_averaged_closed, py::arg("params"), py::arg("t0"),
                   py::arg("tau"), py::arg("tau0"), py::arg("detector"), py::arg("regime"),
                   py::arg("beta") = std::nullopt, py::arg("omega_shift") = std::nullopt);
    closed_mod.def("g2_unconverted", &closed::g2_unconverted_closed);
    closed_mod.def("hom_rate", &closed::hom_rate_closed, py::arg("params"), py::arg("t0"),
                   py::arg("tau_t"), py::arg("tau0"), py::arg("omega_shift"),
                   py::arg("beta") = std::nullopt);
    closed_mod.def("hom_visibility", &closed::hom_visibility_closed, py::arg("params"),
                   py::arg("omega_shift"), py::arg("beta"), py::arg("mode"));

    py::class_<RunConfig>(m, "RunConfig").def("__repr__", [](const RunConfig& c) {
        return serialize_config(c);
    });
    m.def("parse_config_text", &parse_config_text);
    m.def("parse_config_file", &parse_config_file);
    m.def("serialize_config", &serialize_config);
    m.def("compare_report_json", [](const RunConfig& cfg) {
        return closed::compare_against_oracle(cfg).to_json();
    });
    m.def("compare_report_text", [](const RunConfig& cfg) {
        return closed::compare_against_oracle(cfg).to_text();
    });
    m.def("run_figure", [](const std::string& figure, const std::string& out_dir,
                           std::size_t grid_n) {
        auto fid = parse_figure_id(figure);
        if (!fid)
            throw std::invalid_argument("unknown figure id '" + figure + "'");
        CommandOverrides ov;
        ov.out_dir = out_dir;
        if (grid_n)
            ov.grid_n = grid_n;
        std::ostringstream out, err;
        const int status =
            run_command(Command::Figure, default_config(), fid, ov, out, err);
        return py::make_tuple(status, out.str(), err.str());
    }, py::arg("figure"), py::arg("out_dir"), py::arg("grid_n") = 0);
}

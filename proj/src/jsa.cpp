#include "biphoton/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "biphoton/warnings.hpp"

namespace biphoton {

FrequencyGrid2D make_default_grid(const GaussianSourceParams& params, std::size_t n,
                                  double half_width_factor) {
    const double scale = std::max(2.0 * params.sigma_p, params.sigma_minus);
    return make_frequency_grid(params.signal_center(), params.idler_center(),
                               half_width_factor * scale, n);
}

Jsa gaussian_jsa(const GaussianSourceParams& params, const FrequencyGrid2D& grid) {
    const double scale = std::max(2.0 * params.sigma_p, params.sigma_minus);
    if (grid.half_width < 4.0 * scale ||
        std::abs(grid.center_s - params.signal_center()) + 4.0 * scale > grid.half_width ||
        std::abs(grid.center_i - params.idler_center()) + 4.0 * scale > grid.half_width)
        emit_warning("gaussian_jsa: grid covers less than 4 bandwidths around the peak; "
                     "norm and moments may be truncated");

    const double norm_const = 1.0 / std::sqrt(2.0 * std::numbers::pi * params.sigma_p * params.sigma_minus);
    const double pump_prec = 1.0 / (16.0 * params.sigma_p * params.sigma_p);
    const double pair_prec = 1.0 / (4.0 * params.sigma_minus * params.sigma_minus);

    Jsa jsa;
    jsa.grid = grid;
    jsa.label = "gaussian";
    jsa.values.resize(grid.n * grid.n);
    const std::vector<double> ws = grid.axis_s_values();
    const std::vector<double> wi = grid.axis_i_values();
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double s = ws[j];
        for (std::size_t k = 0; k < grid.n; ++k) {
            const double sum = s + wi[k] - params.omega_p;
            const double diff = s - wi[k] - params.delta;
            jsa.values[j * grid.n + k] =
                norm_const * std::exp(-sum * sum * pump_prec - diff * diff * pair_prec);
        }
    }
    return jsa;
}

double jsa_norm(const Jsa& jsa) {
    double sum = 0.0;
    for (const auto& v : jsa.values)
        sum += std::norm(v);
    const double dw = jsa.grid.spacing();
    return sum * dw * dw;
}

double SpectralMoments::correlation() const {
    const double d = std::sqrt(var_s * var_i);
    return d > 0.0 ? cov_si / d : 0.0;
}

SpectralMoments spectral_moments(const Jsa& jsa, MomentWeight weight) {
    const std::size_t n = jsa.grid.n;
    const std::vector<double> ws = jsa.grid.axis_s_values();
    const std::vector<double> wi = jsa.grid.axis_i_values();

    auto w_of = [&](const std::complex<double>& v) {
        return weight == MomentWeight::SquaredModulus ? std::norm(v) : std::abs(v);
    };

    double wsum = 0.0, ms = 0.0, mi = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double w = w_of(jsa.values[j * n + k]);
            wsum += w;
            ms += w * ws[j];
            mi += w * wi[k];
        }
    SpectralMoments m;
    const double dw = jsa.grid.spacing();
    m.total = wsum * dw * dw;
    if (wsum <= 0.0)
        return m;
    ms /= wsum;
    mi /= wsum;
    m.mean_s = ms;
    m.mean_i = mi;
    double vs = 0.0, vi = 0.0, cov = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double ds = ws[j] - ms;
        for (std::size_t k = 0; k < n; ++k) {
            const double w = w_of(jsa.values[j * n + k]);
            const double di = wi[k] - mi;
            vs += w * ds * ds;
            vi += w * di * di;
            cov += w * ds * di;
        }
    }
    m.var_s = vs / wsum;
    m.var_i = vi / wsum;
    m.cov_si = cov / wsum;
    return m;
}

} // namespace biphoton

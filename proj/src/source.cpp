#include "biphoton/source.hpp"

#include <stdexcept>
#include <string>

#include "biphoton/warnings.hpp"

namespace biphoton {

GaussianSourceParams make_source_params(double omega_p, double sigma_p, double delta,
                                        double sigma_minus, double tau0) {
    if (!(sigma_p > 0.0))
        throw std::invalid_argument("make_source_params: sigma_p must be positive");
    if (!(sigma_minus > 0.0))
        throw std::invalid_argument("make_source_params: sigma_minus must be positive");
    GaussianSourceParams p{omega_p, sigma_p, delta, sigma_minus, tau0};
    if (!(p.signal_center() > 0.0) || !(p.idler_center() > 0.0))
        emit_warning("source: derived center frequency not positive (" +
                     std::to_string(p.signal_center()) + ", " + std::to_string(p.idler_center()) +
                     " rad/ps); results are translation invariant but the configuration is unphysical");
    return p;
}

double correlation_coefficient(const GaussianSourceParams& params) {
    const double a = 4.0 * params.sigma_p * params.sigma_p;
    const double b = params.sigma_minus * params.sigma_minus;
    return (a - b) / (a + b);
}

} // namespace biphoton

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "biphoton/grid.hpp"
#include "biphoton/source.hpp"

namespace biphoton {

// Joint spectral amplitude sampled on a FrequencyGrid2D. values is row-major
// n x n with the signal axis first: values[j * n + k] = f(axis_s(j), axis_i(k)).
// Amplitudes carry dimension 1/(rad/ps) so the squared modulus integrates to
// a pure number.
struct Jsa {
    FrequencyGrid2D grid;
    std::vector<std::complex<double>> values;
    std::string label;

    std::complex<double>& at(std::size_t j, std::size_t k) { return values[j * grid.n + k]; }
    const std::complex<double>& at(std::size_t j, std::size_t k) const { return values[j * grid.n + k]; }
};

// Grid sized for the source: centered on the amplitude peak with
// half_width = factor * max(2 sigma_p, sigma_minus).
FrequencyGrid2D make_default_grid(const GaussianSourceParams& params, std::size_t n = 512,
                                  double half_width_factor = 6.0);

// Normalized Gaussian joint amplitude
//   f = (2 pi sigma_p sigma_minus)^{-1/2}
//       * exp(-(ws + wi - omega_p)^2 / (16 sigma_p^2))
//       * exp(-(ws - wi - delta)^2 / (4 sigma_minus^2)).
// Warns when the grid covers less than +-4 * max(2 sigma_p, sigma_minus)
// around the peak.
Jsa gaussian_jsa(const GaussianSourceParams& params, const FrequencyGrid2D& grid);

// Discrete norm: sum |f|^2 * spacing^2. Equals 1 for a well-resolved
// gaussian_jsa.
double jsa_norm(const Jsa& jsa);

// First and second moments of the two frequency axes under a choice of
// weight. Used for statistics checks and for sizing time-domain windows.
enum class MomentWeight { SquaredModulus, Modulus };

struct SpectralMoments {
    double total = 0.0; // sum of weights * spacing^2
    double mean_s = 0.0;
    double mean_i = 0.0;
    double var_s = 0.0;
    double var_i = 0.0;
    double cov_si = 0.0;

    double var_sum() const { return var_s + var_i + 2.0 * cov_si; }
    double var_diff() const { return var_s + var_i - 2.0 * cov_si; }
    double correlation() const;
};

SpectralMoments spectral_moments(const Jsa& jsa, MomentWeight weight = MomentWeight::SquaredModulus);

} // namespace biphoton

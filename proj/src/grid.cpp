#include "biphoton/grid.hpp"

#include <stdexcept>

namespace biphoton {

std::vector<double> FrequencyGrid2D::axis_s_values() const {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = axis_s(j);
    if (n > 0) {
        v.front() = center_s - half_width;
        v.back() = center_s + half_width;
    }
    return v;
}

std::vector<double> FrequencyGrid2D::axis_i_values() const {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = axis_i(k);
    if (n > 0) {
        v.front() = center_i - half_width;
        v.back() = center_i + half_width;
    }
    return v;
}

FrequencyGrid2D make_frequency_grid(double center_s, double center_i, double half_width, std::size_t n) {
    if (n < 8)
        throw std::invalid_argument("make_frequency_grid: n must be at least 8");
    if (n % 2 != 0)
        throw std::invalid_argument("make_frequency_grid: n must be even");
    if (!(half_width > 0.0))
        throw std::invalid_argument("make_frequency_grid: half_width must be positive");
    return FrequencyGrid2D{center_s, center_i, half_width, n};
}

} // namespace biphoton

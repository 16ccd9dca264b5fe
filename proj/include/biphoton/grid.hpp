#pragma once

#include <cstddef>
#include <vector>

namespace biphoton {

// Uniform two-axis frequency grid (rad/ps). Axis "s" carries the signal
// photon, axis "i" the idler (the photon the conversion channel acts on).
// Sample j of axis k is exactly center_k - half_width + j * spacing().
struct FrequencyGrid2D {
    double center_s = 0.0;
    double center_i = 0.0;
    double half_width = 0.0;
    std::size_t n = 0;

    double spacing() const { return 2.0 * half_width / static_cast<double>(n - 1); }
    double axis_s(std::size_t j) const { return center_s - half_width + static_cast<double>(j) * spacing(); }
    double axis_i(std::size_t k) const { return center_i - half_width + static_cast<double>(k) * spacing(); }

    std::vector<double> axis_s_values() const;
    std::vector<double> axis_i_values() const;

    bool operator==(const FrequencyGrid2D&) const = default;
};

// Throws std::invalid_argument unless n is even, n >= 8 and half_width > 0.
FrequencyGrid2D make_frequency_grid(double center_s, double center_i, double half_width, std::size_t n);

} // namespace biphoton

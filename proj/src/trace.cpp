#include "biphoton/trace.hpp"

#include <stdexcept>

namespace biphoton {

std::vector<double> DelayGrid::sample() const {
    std::vector<double> out(steps);
    if (steps == 1) {
        out[0] = start;
        return out;
    }
    const double h = (stop - start) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i)
        out[i] = start + static_cast<double>(i) * h;
    out.back() = stop;
    return out;
}

DelayGrid make_delay_grid(double start, double stop, std::size_t steps) {
    if (steps < 1)
        throw std::invalid_argument("make_delay_grid: steps must be at least 1");
    if (steps > 1 && !(stop > start))
        throw std::invalid_argument("make_delay_grid: stop must exceed start");
    return DelayGrid{start, stop, steps};
}

} // namespace biphoton

#pragma once

#include <cstddef>
#include <vector>

namespace biphoton {

// Gauss-Legendre rule on [-1, 1]. Nodes ascending, weights positive.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Computed by Newton iteration on the Legendre recurrence; results are
// cached per order (thread-safe).
const GaussLegendreRule& gauss_legendre(std::size_t order);

// Integrate f over [a, b] with the given order.
template <class F>
double integrate_gauss_legendre(F&& f, double a, double b, std::size_t order) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

} // namespace biphoton

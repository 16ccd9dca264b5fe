#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "biphoton/jsa.hpp"
#include "biphoton/units.hpp"

#include "test_helpers.hpp"

using namespace biphoton;
using biphoton::testing::reference_source;
using biphoton::testing::WarningCapture;

TEST_CASE("uniform grid arithmetic") {
    const auto g = make_frequency_grid(0.0, 0.0, 1.0, 8);
    CHECK(g.spacing() == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    const auto ax = g.axis_s_values();
    CHECK(ax.front() == -1.0);
    CHECK(ax.back() == 1.0);
    CHECK(ax[1] == doctest::Approx(-5.0 / 7.0).epsilon(1e-15));

    const auto g2 = make_frequency_grid(10.0, 20.0, 5.0, 16);
    CHECK(g2.axis_s_values().front() == 5.0);
    CHECK(g2.axis_s_values().back() == 15.0);
    CHECK(g2.axis_i_values().front() == 15.0);
    CHECK(g2.axis_i_values().back() == 25.0);
}

TEST_CASE("grid preconditions") {
    CHECK_THROWS_AS(make_frequency_grid(0, 0, 1.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(make_frequency_grid(0, 0, 1.0, 6), std::invalid_argument);
    CHECK_THROWS_AS(make_frequency_grid(0, 0, 0.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_frequency_grid(0, 0, -2.0, 16), std::invalid_argument);
}

TEST_CASE("gaussian amplitude is normalized on the default grid") {
    const auto params = reference_source();
    const auto jsa = gaussian_jsa(params, make_default_grid(params, 256));
    CHECK(jsa_norm(jsa) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("amplitude peaks at the derived center frequencies") {
    const auto params = reference_source();
    const auto grid = make_default_grid(params, 128);
    const auto jsa = gaussian_jsa(params, grid);
    std::size_t best_j = 0, best_k = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < grid.n; ++j)
        for (std::size_t k = 0; k < grid.n; ++k)
            if (std::abs(jsa.at(j, k)) > best) {
                best = std::abs(jsa.at(j, k));
                best_j = j;
                best_k = k;
            }
    CHECK(std::abs(grid.axis_s(best_j) - params.signal_center()) <= 0.5 * grid.spacing());
    CHECK(std::abs(grid.axis_i(best_k) - params.idler_center()) <= 0.5 * grid.spacing());
}

TEST_CASE("norm scales quadratically and vanishes for the zero amplitude") {
    const auto params = reference_source();
    auto jsa = gaussian_jsa(params, make_default_grid(params, 64));
    const double base = jsa_norm(jsa);
    for (auto& v : jsa.values)
        v *= 2.0;
    CHECK(jsa_norm(jsa) == doctest::Approx(4.0 * base).epsilon(1e-12));
    for (auto& v : jsa.values)
        v = 0.0;
    CHECK(jsa_norm(jsa) == 0.0);
}

TEST_CASE("sum and difference variables decorrelate at sigma_p = sigma_minus/2") {
    auto params = reference_source();
    params = make_source_params(params.omega_p, 0.5 * params.sigma_minus, params.delta,
                                params.sigma_minus, params.tau0);
    const auto jsa = gaussian_jsa(params, make_default_grid(params, 256));
    const auto m = spectral_moments(jsa);
    // covariance of sum and difference = var_s - var_i
    CHECK(std::abs(m.var_s - m.var_i) <= 1e-6 * m.var_sum());
    CHECK(std::abs(correlation_coefficient(params)) <= 1e-15);
}

TEST_CASE("weighted widths reproduce the source bandwidths") {
    const auto params = reference_source();
    const auto m = spectral_moments(gaussian_jsa(params, make_default_grid(params, 256)));
    CHECK(std::sqrt(m.var_sum()) == doctest::Approx(2.0 * params.sigma_p).epsilon(0.01));
    CHECK(std::sqrt(m.var_diff()) == doctest::Approx(params.sigma_minus).epsilon(0.01));
}

TEST_CASE("correlation coefficient examples and grid cross-check") {
    auto p = reference_source(); // sigma_p = sigma_minus / 10
    CHECK(correlation_coefficient(p) == doctest::Approx(-0.923077).epsilon(1e-6));

    const auto half = make_source_params(p.omega_p, 0.5 * p.sigma_minus, p.delta, p.sigma_minus, 0.0);
    CHECK(std::abs(correlation_coefficient(half)) <= 1e-15);

    const auto wide = make_source_params(p.omega_p, 100.0 * p.sigma_minus, p.delta, p.sigma_minus, 0.0);
    CHECK(correlation_coefficient(wide) == doctest::Approx(0.99995).epsilon(1e-5));

    const auto m = spectral_moments(gaussian_jsa(p, make_default_grid(p, 512)));
    CHECK(m.correlation() == doctest::Approx(correlation_coefficient(p)).epsilon(1e-3));
}

TEST_CASE("translation invariance of norm and peak-relative moments") {
    const auto p1 = reference_source();
    const double shift = 64.0; // exactly representable
    const auto p2 = make_source_params(p1.omega_p + 2.0 * shift, p1.sigma_p, p1.delta,
                                       p1.sigma_minus, p1.tau0);
    const auto g1 = make_default_grid(p1, 128);
    const auto g2 = make_frequency_grid(g1.center_s + shift, g1.center_i + shift, g1.half_width, g1.n);
    const auto j1 = gaussian_jsa(p1, g1);
    const auto j2 = gaussian_jsa(p2, g2);
    CHECK(jsa_norm(j1) == doctest::Approx(jsa_norm(j2)).epsilon(1e-10));
    const auto m1 = spectral_moments(j1);
    const auto m2 = spectral_moments(j2);
    CHECK(m1.var_s == doctest::Approx(m2.var_s).epsilon(1e-10));
    CHECK(m1.var_i == doctest::Approx(m2.var_i).epsilon(1e-10));
    CHECK(m1.cov_si == doctest::Approx(m2.cov_si).epsilon(1e-10));
    CHECK(m1.mean_s - p1.signal_center() ==
          doctest::Approx(m2.mean_s - p2.signal_center()).epsilon(1e-10));
}

TEST_CASE("narrow grids warn but proceed") {
    const auto params = reference_source();
    WarningCapture capture;
    const auto grid = make_frequency_grid(params.signal_center(), params.idler_center(),
                                          2.0 * params.sigma_minus, 64);
    const auto jsa = gaussian_jsa(params, grid);
    CHECK(capture.contains("grid covers less than"));
    CHECK(jsa.values.size() == 64u * 64u);
}

TEST_CASE("source preconditions") {
    CHECK_THROWS_AS(make_source_params(1.0, 0.0, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_source_params(1.0, 1.0, 0.0, -1.0, 0.0), std::invalid_argument);
    WarningCapture capture;
    make_source_params(-100.0, 1.0, 0.0, 1.0, 0.0);
    CHECK(capture.contains("not positive"));
}

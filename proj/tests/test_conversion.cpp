#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "biphoton/conversion.hpp"
#include "biphoton/quadrature.hpp"
#include "biphoton/units.hpp"

#include "test_helpers.hpp"

using namespace biphoton;
using biphoton::testing::reference_source;

TEST_CASE("conversion amplitude") {
    const auto flat = make_flat_channel(0.8, thz_to_angular(1.0));
    CHECK(conversion_amplitude(flat, 123.4) == 0.8);

    const double peak = thz_to_angular(300.0);
    const double beta = thz_to_angular(0.7);
    const auto pm = make_phase_matched_channel(0.9, thz_to_angular(1.0), beta, peak);
    CHECK(conversion_amplitude(pm, peak) == 0.9);
    CHECK(conversion_amplitude(pm, peak + beta) == doctest::Approx(0.9 * 0.606531).epsilon(1e-6));
}

TEST_CASE("vacuum coupling completes the channel to unity") {
    CHECK(vacuum_coupling(make_flat_channel(1.0, 0.0), 0.0) == 0.0);
    CHECK(vacuum_coupling(make_flat_channel(0.0, 0.0), 0.0) == 1.0);
    CHECK(vacuum_coupling(make_flat_channel(0.6, 0.0), 0.0) == doctest::Approx(0.8).epsilon(1e-15));

    const auto pm = make_phase_matched_channel(0.95, 1.0, 2.0, 5.0);
    for (double w : {-3.0, 0.0, 4.5, 5.0, 11.0}) {
        const double t = conversion_amplitude(pm, w);
        const double eta = vacuum_coupling(pm, w);
        CHECK(t * t + eta * eta == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("channel preconditions") {
    CHECK_THROWS_AS(make_flat_channel(1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_flat_channel(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_phase_matched_channel(0.5, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("identity channel is bitwise identity") {
    const auto params = reference_source();
    const auto jsa = gaussian_jsa(params, make_default_grid(params, 64));
    const auto out = apply_conversion(jsa, make_flat_channel(1.0, 0.0));
    CHECK(out.grid == jsa.grid);
    REQUIRE(out.values.size() == jsa.values.size());
    for (std::size_t i = 0; i < out.values.size(); ++i)
        CHECK(out.values[i] == jsa.values[i]);
}

TEST_CASE("flat shift translates the idler axis and preserves the norm") {
    const auto params = reference_source();
    const auto jsa = gaussian_jsa(params, make_default_grid(params, 256));
    const double shift = thz_to_angular(120.0);
    const auto out = apply_conversion(jsa, make_flat_channel(1.0, shift));
    CHECK(out.grid.center_i == jsa.grid.center_i + shift);
    CHECK(out.grid.center_s == jsa.grid.center_s);
    CHECK(jsa_norm(out) == doctest::Approx(jsa_norm(jsa)).epsilon(1e-10));
    const auto m = spectral_moments(out);
    CHECK(m.mean_i == doctest::Approx(params.idler_center() + shift).epsilon(1e-9));
}

TEST_CASE("flat attenuation scales the norm by t0^2") {
    const auto params = reference_source();
    const auto jsa = gaussian_jsa(params, make_default_grid(params, 128));
    const auto out = apply_conversion(jsa, make_flat_channel(0.5, 0.0));
    CHECK(jsa_norm(out) == doctest::Approx(0.25 * jsa_norm(jsa)).epsilon(1e-12));
}

TEST_CASE("flat shifts compose") {
    const auto params = reference_source();
    const auto jsa = gaussian_jsa(params, make_default_grid(params, 64));
    const auto one = apply_conversion(apply_conversion(jsa, make_flat_channel(1.0, 3.0)),
                                      make_flat_channel(1.0, 4.5));
    const auto both = apply_conversion(jsa, make_flat_channel(1.0, 7.5));
    CHECK(one.grid == both.grid);
    for (std::size_t i = 0; i < one.values.size(); ++i)
        CHECK(one.values[i] == both.values[i]);
}

TEST_CASE("phase-matched norm agrees with a marginal quadrature oracle") {
    const auto params = reference_source();
    const auto jsa = gaussian_jsa(params, make_default_grid(params, 512));
    const double shift = thz_to_angular(1.95);
    const double beta = 2.0 * params.sigma_minus;
    const double peak = params.idler_center() + shift;
    const auto out = apply_conversion(jsa, make_phase_matched_channel(1.0, shift, beta, peak));

    // independent route: the squared idler marginal of the density is normal
    // with variance (4 sp^2 + sm^2)/4; integrate it against the window by
    // one-dimensional quadrature
    const double var_i = (4.0 * params.sigma_p * params.sigma_p +
                          params.sigma_minus * params.sigma_minus) / 4.0;
    const double mu = params.idler_center();
    auto integrand = [&](double w) {
        const double marg = std::exp(-(w - mu) * (w - mu) / (2.0 * var_i)) /
                            std::sqrt(2.0 * std::acos(-1.0) * var_i);
        const double d = (w + shift) - peak;
        return marg * std::exp(-d * d / (beta * beta));
    };
    const double oracle =
        integrate_gauss_legendre(integrand, mu - 12.0 * std::sqrt(var_i), mu + 12.0 * std::sqrt(var_i), 96);
    CHECK(jsa_norm(out) == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(jsa_norm(out) <= jsa_norm(jsa) + 1e-12);
}

TEST_CASE("wide phase matching converges to the flat channel") {
    const auto params = reference_source();
    const auto jsa = gaussian_jsa(params, make_default_grid(params, 128));
    const double shift = thz_to_angular(1.0);
    const double beta = 1e6 * params.sigma_minus;
    const auto pm = apply_conversion(
        jsa, make_phase_matched_channel(0.7, shift, beta, params.idler_center() + shift));
    const auto flat = apply_conversion(jsa, make_flat_channel(0.7, shift));
    double max_f = 0.0, max_dev = 0.0;
    for (std::size_t i = 0; i < jsa.values.size(); ++i) {
        max_f = std::max(max_f, std::abs(jsa.values[i]));
        max_dev = std::max(max_dev, std::abs(pm.values[i] - flat.values[i]));
    }
    CHECK(max_dev < 1e-6 * 0.7 * max_f);
}

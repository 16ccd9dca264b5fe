#pragma once

namespace biphoton {

// Physical description of the Gaussian photon-pair source. All angular
// frequencies in rad/ps, times in ps.
//
//   omega_p      pump central frequency
//   sigma_p      pump bandwidth (> 0)
//   delta        signal-idler center separation: the joint amplitude peaks
//                where omega_s - omega_i = delta
//   sigma_minus  pair (difference-frequency) bandwidth (> 0)
//   tau0         fixed path delay of the signal arm
struct GaussianSourceParams {
    double omega_p = 0.0;
    double sigma_p = 0.0;
    double delta = 0.0;
    double sigma_minus = 0.0;
    double tau0 = 0.0;

    double signal_center() const { return 0.5 * (omega_p + delta); }
    double idler_center() const { return 0.5 * (omega_p - delta); }

    bool operator==(const GaussianSourceParams&) const = default;
};

// Throws std::invalid_argument for non-positive bandwidths; warns (but
// accepts) when a derived center frequency is not positive, since every
// computed quantity is translation invariant.
GaussianSourceParams make_source_params(double omega_p, double sigma_p, double delta,
                                        double sigma_minus, double tau0);

// (4 sigma_p^2 - sigma_minus^2) / (4 sigma_p^2 + sigma_minus^2), the
// correlation between the two photon frequencies under the joint spectral
// density. Lies in (-1, 1).
double correlation_coefficient(const GaussianSourceParams& params);

} // namespace biphoton

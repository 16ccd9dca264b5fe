#pragma once

#include <numbers>

namespace biphoton {

// Internal convention: every frequency is an angular frequency in rad/ps,
// every time is in ps. Config files take ordinary frequencies in THz;
// 1 THz corresponds to 2*pi rad/ps.

inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double thz_to_angular(double f_thz) { return two_pi * f_thz; }
constexpr double angular_to_thz(double omega) { return omega / two_pi; }

} // namespace biphoton

#pragma once

namespace biphoton {

// Error function by rational Chebyshev approximation (Cody's three-interval
// scheme). Relative accuracy better than 1e-15 over the full double range;
// unit tests compare against the C library implementation.
double erf(double x);
double erfc(double x);

} // namespace biphoton

#pragma once

// Modified Bessel functions of the first kind, orders 0 and 1, for
// nonnegative real arguments.
//
// The ascending power series is used for x <= 15 and the large-argument
// asymptotic expansion above that. Both are accurate to a few ulps on
// [0, 50]; the asymptotic branch overflows to +inf a little above x = 709.

namespace rmm::specfun {

/// Series/asymptotic crossover.
inline constexpr double kSeriesLimit = 15.0;

/// I0(x). Throws std::domain_error for negative or non-finite x.
double bessel_i0(double x);

/// I1(x). Throws std::domain_error for negative or non-finite x.
double bessel_i1(double x);

/// I1(x)/x with the removable singularity filled in: returns 1/2 at x = 0.
double bessel_i1_over_x(double x);

/// d/dx [I1(x)/x] = (I0(x) - 2 I1(x)/x)/x, evaluated by series near the
/// origin where the closed form cancels. Zero at x = 0.
double bessel_i1_over_x_d1(double x);

/// d^2/dx^2 [I1(x)/x]; equals 1/8 at x = 0.
double bessel_i1_over_x_d2(double x);

}  // namespace rmm::specfun

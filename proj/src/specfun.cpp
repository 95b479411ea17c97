#include "rmm/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rmm::specfun {
namespace {

constexpr double kRelStop = 1e-17;
constexpr int kMaxTerms = 200;

void check_argument(double x, const char* who)
{
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error(std::string(who) + ": argument must be finite and >= 0, got "
                                + std::to_string(x));
    }
}

// sum_k (x^2/4)^k / (k! (k+nu)!) for nu = 0 or 1
double ascending_series(double x, int nu)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < kMaxTerms; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + nu));
        sum += term;
        if (term < kRelStop * sum) {
            break;
        }
    }
    return sum;
}

// Hankel expansion e^x / sqrt(2 pi x) * sum (-1)^k a_k(nu) / x^k, truncated
// at the smallest term.
double asymptotic(double x, int nu)
{
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < kMaxTerms; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) {
            break;
        }
        term = next;
        sum += term;
        if (std::abs(term) < kRelStop * std::abs(sum)) {
            break;
        }
    }
    const double log_prefactor = x - 0.5 * std::log(2.0 * std::numbers::pi * x);
    return std::exp(log_prefactor) * sum;
}

// Coefficients of I1(x)/x = sum c_k x^(2k), c_k = 1 / (2 * 4^k k! (k+1)!).
// Returns the sum of its derivative of order `order` (0, 1 or 2).
double i1_over_x_series(double x, int order)
{
    double coeff = 0.5;  // c_0
    double sum = (order == 0) ? coeff : 0.0;
    for (int k = 1; k < kMaxTerms; ++k) {
        coeff /= 4.0 * k * (k + 1.0);
        const int power = 2 * k - order;
        double factor = 1.0;
        for (int j = 0; j < order; ++j) {
            factor *= static_cast<double>(2 * k - j);
        }
        const double term = factor * coeff * std::pow(x, power);
        sum += term;
        if (term == 0.0 || term < kRelStop * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

}  // namespace

double bessel_i0(double x)
{
    check_argument(x, "bessel_i0");
    if (x <= kSeriesLimit) {
        return ascending_series(x, 0);
    }
    return asymptotic(x, 0);
}

double bessel_i1(double x)
{
    check_argument(x, "bessel_i1");
    if (x <= kSeriesLimit) {
        return 0.5 * x * ascending_series(x, 1);
    }
    return asymptotic(x, 1);
}

double bessel_i1_over_x(double x)
{
    check_argument(x, "bessel_i1_over_x");
    if (x <= kSeriesLimit) {
        return 0.5 * ascending_series(x, 1);
    }
    return asymptotic(x, 1) / x;
}

double bessel_i1_over_x_d1(double x)
{
    check_argument(x, "bessel_i1_over_x_d1");
    if (x <= kSeriesLimit) {
        return i1_over_x_series(x, 1);
    }
    return (bessel_i0(x) - 2.0 * bessel_i1_over_x(x)) / x;
}

double bessel_i1_over_x_d2(double x)
{
    check_argument(x, "bessel_i1_over_x_d2");
    if (x <= kSeriesLimit) {
        return i1_over_x_series(x, 2);
    }
    return (bessel_i1(x) - 3.0 * bessel_i1_over_x_d1(x)) / x;
}

}  // namespace rmm::specfun

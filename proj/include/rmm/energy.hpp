#pragma once

// Stored energy of the axisymmetric state per unit cylinder length.
//
// With X = u' - P_rr, Y = u/r - P_thth, S = P_rth + P_thr, T = P_rth - P_thr
// and the two nonzero Curl P components
//   curl_zr  = P_thr' + S/r,   curl_zth = P_thth' + (P_thth - P_rr)/r
// the density is
//
//   W = mu_e (X^2 + Y^2 + S^2/2) + lambda_e/2 (X + Y)^2 + mu_c T^2/2
//     + mu_m (P_rr^2 + P_thth^2 + S^2/2) + lambda_m/2 (P_rr + P_thth)^2
//     + mu_M L_c^2/2 (curl_zr^2 + curl_zth^2)
//
// and the total is E = 2 pi int_0^R W r dr.

#include "rmm/closed_form.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rmm {

/// W at one radius. Uses k.u_over_r and k.curl_* as given, so the caller owns
/// the axis limits.
double energy_density(const FullParams& params, const RadialKinematics& k);

/// Nodal values on uniform nodes r_0 < ... < r_{n-1}. Shear components may be
/// nonzero (perturbation studies).
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> u_r;
    std::vector<double> du_r;
    std::vector<double> P_rr;
    std::vector<double> P_thth;
    std::vector<double> dP_thth;
    std::vector<double> P_rth;
    std::vector<double> P_thr;
    std::vector<double> dP_thr;

    explicit RadialProfile(std::vector<double> nodes);
    [[nodiscard]] std::size_t size() const noexcept { return r.size(); }
};

inline constexpr std::size_t kEnergyNodes = 2049;

/// Uniform nodes on [0, R], including both ends.
std::vector<double> uniform_nodes(double R, std::size_t count);

/// The closed form sampled on uniform_nodes(R, count).
RadialProfile sample_profile(const AxisymmetricSolution& solution, std::size_t count = kEnergyNodes);

/// 2 pi int W r dr: composite Simpson for an odd node count, trapezoid
/// otherwise. The integrand at r = 0 is taken as 0. Throws
/// std::invalid_argument when the arrays differ in length or have fewer than
/// two entries.
double total_energy(const FullParams& params, const RadialProfile& profile);

/// Random admissible variation of amplitude `amplitude` (relative to the
/// boundary strain scale): a few sine/polynomial modes in u_r, P_rr, P_thth,
/// P_rtheta, P_thetar that vanish wherever a boundary value is prescribed
/// (u_r, P_thth, P_rtheta at r = R) and keep the fields regular at the axis
/// (u_r(0) = 0, P_rr(0) = P_thth(0), P_rtheta + P_thetar = 0 at r = 0).
/// Derivative arrays are exact.
RadialProfile random_variation(const std::vector<double>& nodes, double R, double amplitude, std::uint64_t seed);

/// Pointwise sum of two profiles on the same nodes.
RadialProfile add_profiles(const RadialProfile& a, const RadialProfile& b);

struct MinimalityTrial {
    double margin = 0.0;     // E(solution + variation) - E(solution)
    double quadratic = 0.0;  // E(variation) alone
};

/// Energy increase for `trials` random variations (seeds seed, seed + 1, ...).
std::vector<MinimalityTrial> minimality_trials(const AxisymmetricSolution& solution, std::size_t trials,
                                               double amplitude, std::uint64_t seed,
                                               std::size_t nodes = kEnergyNodes);

}  // namespace rmm

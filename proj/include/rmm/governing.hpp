#pragma once

// The six axisymmetric equilibrium equations (no theta dependence, no body
// force or body moment), written as linear combinations of field values and
// their first two radial derivatives:
//
//   eq_k(r) = sum_f  c[k][f][0] v_f + c[k][f][1] v_f' + c[k][f][2] v_f''
//
// Equation order: radial force balance, hoop force balance, then the micro
// balances for P_rr, P_rtheta, P_thetar, P_thth. With L2 = mu_M L_c^2 and
// C = 2 mu_e + lambda_e:
//
//   radial  C (u'' + u'/r - u/r^2 - P_rr') - 2 mu_e (P_rr - P_thth)/r - lambda_e P_thth'
//   hoop    mu_e (P_rth' + P_thr' + 2 (P_rth + P_thr)/r) - mu_c (P_rth' - P_thr')
//   P_rr    C u' + lambda_e u/r - (C + 2 mu_m + lambda_m) P_rr - (lambda_e + lambda_m) P_thth
//             + L2 (P_thth'/r + (P_thth - P_rr)/r^2)
//   P_rth   (mu_e + mu_m + mu_c) P_rth + (mu_e + mu_m - mu_c) P_thr
//             + L2 (P_thr'/r + (P_rth + P_thr)/r^2)
//   P_thr   (mu_e + mu_m - mu_c) P_rth + (mu_e + mu_m + mu_c) P_thr
//             - L2 (P_thr'' + P_rth'/r + P_thr'/r - (P_rth + P_thr)/r^2)
//   P_thth  C u/r + lambda_e u' - (C + 2 mu_m + lambda_m) P_thth - (lambda_e + lambda_m) P_rr
//             + L2 (P_thth'' + P_thth'/r - P_rr'/r - (P_thth - P_rr)/r^2)
//
// These are the Euler-Lagrange equations of the energy in energy.hpp.

#include "rmm/fields.hpp"
#include "rmm/material.hpp"

#include <array>
#include <string_view>

namespace rmm {

struct ProblemSetup;

enum class Equation : std::size_t {
    radial_force = 0,
    hoop_force = 1,
    micro_rr = 2,
    micro_rth = 3,
    micro_thr = 4,
    micro_thth = 5,
};

inline constexpr std::size_t kEquationCount = 6;

constexpr std::size_t index(Equation e) noexcept { return static_cast<std::size_t>(e); }

std::string_view equation_name(Equation e);

/// coefficient[field][derivative order]
using EquationRow = std::array<std::array<double, 3>, kFieldCount>;
using EquationTable = std::array<EquationRow, kEquationCount>;

/// Coefficients of all six equations at radius r > 0.
EquationTable equation_table(const FullParams& params, double r);

/// Left-hand sides of the six equations for the given jets (zero for an exact
/// solution).
std::array<double, kEquationCount> equation_residuals(const FullParams& params, double r,
                                                      const FieldJets& jets);

/// Divisor that makes equation e dimensionless: K U0/R for the micro
/// balances, K U0/R^2 for the two force balances, with the stiffness
/// K = mu_M max(1, L_c^2/R^2) (for L_c > R the curvature terms dominate).
/// U0 = 0 falls back to U0 = R so that the zero solution still reports exact
/// zeros.
double residual_scale(const FullParams& params, const ProblemSetup& setup, Equation e);

}  // namespace rmm

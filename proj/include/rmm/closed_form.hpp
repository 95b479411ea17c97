#pragma once

// Closed-form solution of the axisymmetric extension of a long cylinder of
// radius R in the relaxed micromorphic continuum, loaded by u_r(R) = U0 with
// consistent coupling P_thth(R) = U0/R, P_rtheta(R) = 0.
//
// With x = sqrt(a) r the solution reads
//
//   u_r(r)    = C1 A r / 2 + D1 B I1(x) / sqrt(a)
//   Z(r)      = P_rr + P_thth = b/a + D1 I0(x)
//   P_thth(r) = C1 (A - xi3)/2 - D1 xi1 I0(x) + D1 (B + 2 xi1 - xi2) I1(x)/x
//   P_rtheta  = P_thetar = 0
//
// Every I1(x)/x is evaluated through specfun::bessel_i1_over_x so the axis
// r = 0 needs no special casing.

#include "rmm/fields.hpp"
#include "rmm/material.hpp"

#include <vector>

namespace rmm {

struct ProblemSetup {
    double R = 1.0;
    double U0 = 0.0;
};

/// How the coefficients are evaluated. `sharp_layer` is used when L_c = 0 or
/// sqrt(a) R exceeds kSharpLayerArgument: the boundary layer has collapsed,
/// interior points take the L_c -> 0 asymptote and r = R takes the boundary
/// values.
enum class SolutionRegime { bessel, sharp_layer };

inline constexpr double kSharpLayerArgument = 500.0;

struct SolutionCoefficients {
    double a = 0.0;        // 1/length^2; +inf in the sharp-layer regime
    double sqrt_a = 0.0;
    double b = 0.0;        // b = 4 C1 kappa_e mu_m / (mu_M L_c^2 (kappa_m + mu_m))
    double b_over_a = 0.0; // far-field trace of P, finite in both regimes
    double A = 1.0;
    double B = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double xi3 = 0.0;
    double C1 = 0.0;
    double D1 = 0.0;
    SolutionRegime regime = SolutionRegime::bessel;
};

/// Solves the two boundary equations for C1 and D1, then forms b.
/// Throws DegenerateParameters if the shared denominator
/// A (I1(s)(2 xi1 - xi2) - xi1 s I0(s)) + B xi3 I1(s), s = sqrt(a) R, vanishes,
/// std::invalid_argument for R <= 0 or L_c < 0.
SolutionCoefficients compute_coefficients(const FullParams& params, const ProblemSetup& setup);

struct MicroDistortion {
    double P_rr = 0.0;
    double P_thth = 0.0;
    double Z = 0.0;
};

struct StressState {
    double sigma_rr = 0.0;
    double sigma_thth = 0.0;
    double sigma_micro_rr = 0.0;
    double sigma_micro_thth = 0.0;
    double m_zth = 0.0;
};

/// Pointwise kinematics: everything the constitutive laws and the energy need.
/// u_over_r and curl_zth carry their analytic limits at r = 0.
struct RadialKinematics {
    double r = 0.0;
    double u_r = 0.0;
    double du_r = 0.0;
    double u_over_r = 0.0;
    double P_rr = 0.0;
    double P_thth = 0.0;
    double P_rth = 0.0;
    double P_thr = 0.0;
    double dP_thth = 0.0;
    double dP_thr = 0.0;
    double curl_zr = 0.0;   // dP_thr/dr + (P_rth + P_thr)/r
    double curl_zth = 0.0;  // dP_thth/dr + (P_thth - P_rr)/r
};

struct FieldSample {
    double r = 0.0;
    double u_r = 0.0;
    double P_rr = 0.0;
    double P_thth = 0.0;
    double P_rth = 0.0;
    double P_thr = 0.0;
    double Z = 0.0;
    double sigma_rr = 0.0;
    double sigma_thth = 0.0;
    double sigma_micro_rr = 0.0;
    double sigma_micro_thth = 0.0;
    double m_zth = 0.0;
    double energy_density = 0.0;
};

/// Throws std::domain_error for r outside [0, R].
double eval_u_r(const SolutionCoefficients& c, const FullParams& params, const ProblemSetup& setup,
                double r);

/// Throws std::domain_error for r outside [0, R].
MicroDistortion eval_P(const SolutionCoefficients& c, const FullParams& params,
                       const ProblemSetup& setup, double r);

/// Values with exact first and second radial derivatives (I0' = I1,
/// I1' = I0 - I1/x). Shear jets are identically zero.
FieldJets eval_jets(const SolutionCoefficients& c, const FullParams& params,
                    const ProblemSetup& setup, double r);

RadialKinematics eval_kinematics(const SolutionCoefficients& c, const FullParams& params,
                                 const ProblemSetup& setup, double r);

/// sigma = 2 mu_e sym(Du - P) + lambda_e tr(Du - P) 1 (mu_c term vanishes),
/// sigma_micro = 2 mu_m sym P + lambda_m tr P 1, m = mu_M L_c^2 Curl P.
StressState eval_stress(const RadialKinematics& k, const FullParams& params);

FieldSample eval_sample(const SolutionCoefficients& c, const FullParams& params,
                        const ProblemSetup& setup, double r);

/// (u_r(r) - U0 r / R) / U0, computed from the U0 = 1 solution so it is
/// defined for any U0.
double delta_metric(const FullParams& params, const ProblemSetup& setup, double r);

enum class LimitCase { zero_poisson, lc_zero, lc_infinity };

/// `published`: the dedicated limit formulas as printed (mu_E read as mu_m).
/// `asymptotic`: the actual limits of the general solution. The two agree for
/// u_r in every case, for the zero-Poisson case, and for P_thth as L_c -> inf;
/// see README for the P components that differ.
enum class LimitFormula { published, asymptotic };

struct LimitFields {
    double u_r = 0.0;
    double P_rr = 0.0;
    double P_thth = 0.0;
};

/// Throws std::invalid_argument for zero_poisson with nonzero lambda_e or
/// lambda_m, std::domain_error for r outside [0, R].
LimitFields eval_limit(LimitCase kind, const FullParams& params, const ProblemSetup& setup, double r,
                       LimitFormula formula = LimitFormula::published);

/// Largest deviation, per field, of the general solution from a limit formula
/// on `radii` uniform radii in [0, R], each divided by the largest magnitude of
/// that field in the limit formula. The general solution is evaluated at
/// L_c = 1e4 R for lc_infinity, L_c = 1e-4 R for lc_zero (which lands in the
/// sharp-layer regime), and at the given parameters for zero_poisson.
struct LimitDeviation {
    double u_r = 0.0;
    double P_rr = 0.0;
    double P_thth = 0.0;

    [[nodiscard]] double max() const noexcept;
};

inline constexpr double kLimitLengthRatio = 1e4;

LimitDeviation limit_deviation(LimitCase kind, const FullParams& params, const ProblemSetup& setup,
                               LimitFormula formula, std::size_t radii = 100);

/// Bundles parameters, setup and coefficients; all evaluation is const.
class AxisymmetricSolution {
public:
    AxisymmetricSolution(FullParams params, ProblemSetup setup);

    [[nodiscard]] const FullParams& params() const noexcept { return params_; }
    [[nodiscard]] const ProblemSetup& setup() const noexcept { return setup_; }
    [[nodiscard]] const SolutionCoefficients& coefficients() const noexcept { return coeffs_; }

    [[nodiscard]] double u_r(double r) const { return eval_u_r(coeffs_, params_, setup_, r); }
    [[nodiscard]] MicroDistortion P(double r) const { return eval_P(coeffs_, params_, setup_, r); }
    [[nodiscard]] FieldJets jets(double r) const { return eval_jets(coeffs_, params_, setup_, r); }
    [[nodiscard]] RadialKinematics kinematics(double r) const
    {
        return eval_kinematics(coeffs_, params_, setup_, r);
    }
    [[nodiscard]] FieldSample sample(double r) const { return eval_sample(coeffs_, params_, setup_, r); }

    /// Samples u_r, P_rr, P_thth (shear zero) at the grid centres.
    [[nodiscard]] GridSolution on_grid(const RadialGrid& grid) const;

private:
    FullParams params_;
    ProblemSetup setup_;
    SolutionCoefficients coeffs_;
};

}  // namespace rmm

#pragma once

// Finite-difference solver for the six axisymmetric equations, independent of
// the Bessel closed form, plus a residual evaluator and a refinement study.
//
// Grid: cell centres r_i = (i + 1/2) h. Ghost cells across the axis follow
// parity (u_r odd, all four P components even). At r = R the face value of
// u_r, P_thth and P_rtheta is pinned through the quadratic extrapolation
//   (3 v_n + 6 v_{n-1} - v_{n-2}) / 8 = g
// of the ghost v_n; P_rr and P_thetar carry no outer condition and use
// one-sided second-order differences in the last cell.
//
// Interior rows: radial force balance and the P_rr, P_thth, P_rtheta,
// P_thetar micro balances. The hoop force balance is implied by the two shear
// balances and is only checked by residuals().

#include "rmm/closed_form.hpp"
#include "rmm/fields.hpp"
#include "rmm/governing.hpp"
#include "rmm/material.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmm {

class SingularSystem : public std::runtime_error {
public:
    SingularSystem(const std::string& what, double rcond) : std::runtime_error(what), rcond_(rcond) {}
    [[nodiscard]] double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

inline constexpr std::size_t kMinOracleCells = 16;

struct BvpResult {
    GridSolution fields;
    double rcond = 0.0;  // 1-norm reciprocal condition estimate
};

/// Throws std::invalid_argument for n_cells < 16 or L_c <= 0, SingularSystem
/// when the factorization breaks down or rcond is below machine epsilon.
BvpResult solve_bvp(const FullParams& params, const ProblemSetup& setup, std::size_t n_cells);

/// Value at r = R from quadratic extrapolation of the last three centres.
double face_value(const std::vector<double>& cells);

struct EquationResidual {
    Equation equation = Equation::radial_force;
    double max_abs = 0.0;  // scaled
    double rms = 0.0;      // scaled
};

struct ResidualReport {
    std::array<EquationResidual, kEquationCount> equations{};
    std::size_t cells_checked = 0;
    std::optional<std::string> warning;

    [[nodiscard]] double max_abs() const noexcept;
};

inline constexpr std::size_t kResidualMinCells = 64;

/// Six equation residuals at interior cells 2 .. n-3 using fourth-order
/// central differences, each divided by residual_scale(). Grids below 64
/// cells are evaluated but carry a warning; below 5 cells throws
/// std::invalid_argument.
ResidualReport residuals(const GridSolution& fields, const FullParams& params, const ProblemSetup& setup);

struct ConvergenceRow {
    std::size_t n_cells = 0;
    std::array<double, 3> max_rel_error{};            // u_r, P_rr, P_thth
    std::array<std::optional<double>, 3> order{};     // vs previous row
    double max_shear = 0.0;                           // max |P_rtheta|, |P_thetar|
};

/// Errors below this (relative) are treated as round-off; no order is
/// reported for them.
inline constexpr double kConvergenceNoiseFloor = 1e-12;

/// Requires n_list ascending with every entry >= 32.
std::vector<ConvergenceRow> convergence_study(const FullParams& params, const ProblemSetup& setup,
                                              const std::vector<std::size_t>& n_list);

}  // namespace rmm

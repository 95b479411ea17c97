#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmm {

/// Thrown when the macro/micro moduli cannot produce finite positive
/// e-moduli (mu_m <= mu_M or kappa_m <= kappa_M), or when a closed-form
/// solve has no solution.
class DegenerateParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Plane-strain moduli as tabulated: macro (lambda_M, mu_M) and micro
/// (lambda_m, mu_m) in GPa, Cosserat couple modulus mu_c and the
/// characteristic length L_c (same length unit as the cylinder radius).
///
/// mu_c is carried for completeness only. In the axisymmetric extension
/// problem every mu_c term multiplies P_rtheta - P_thetar, which vanishes,
/// so no output depends on it.
struct MacroMicroParams {
    double lambda_M = 0.0;
    double mu_M = 0.0;
    double lambda_m = 0.0;
    double mu_m = 0.0;
    double mu_c = 0.0;
    double L_c = 0.0;
};

/// Elastic (e-) moduli. lambda_e may be negative; positive definiteness in
/// plane strain needs only mu_e > 0 and kappa_e = lambda_e + mu_e > 0.
struct EModuli {
    double lambda_e = 0.0;
    double mu_e = 0.0;
    double kappa_e = 0.0;
};

struct MacroModuli {
    double lambda_M = 0.0;
    double mu_M = 0.0;
};

/// Complete parameter set: the tabulated values plus the derived e-moduli and
/// the 2-D bulk moduli kappa = lambda + mu.
struct FullParams {
    MacroMicroParams macro_micro;
    EModuli e;
    double kappa_m = 0.0;
    double kappa_M = 0.0;

    /// Primary constructor: derives the e-moduli from macro and micro values.
    /// Throws DegenerateParameters when derive_e_moduli does.
    static FullParams from_macro_micro(const MacroMicroParams& p);

    /// Secondary constructor from e- and micro-moduli; macro moduli follow
    /// from the harmonic-mean relations.
    static FullParams from_e_moduli(double lambda_e, double mu_e, double lambda_m, double mu_m,
                                    double mu_c, double L_c);

    [[nodiscard]] double lambda_e() const noexcept { return e.lambda_e; }
    [[nodiscard]] double mu_e() const noexcept { return e.mu_e; }
    [[nodiscard]] double kappa_e() const noexcept { return e.kappa_e; }
    [[nodiscard]] double lambda_m() const noexcept { return macro_micro.lambda_m; }
    [[nodiscard]] double mu_m() const noexcept { return macro_micro.mu_m; }
    [[nodiscard]] double lambda_M() const noexcept { return macro_micro.lambda_M; }
    [[nodiscard]] double mu_M() const noexcept { return macro_micro.mu_M; }
    [[nodiscard]] double mu_c() const noexcept { return macro_micro.mu_c; }
    [[nodiscard]] double L_c() const noexcept { return macro_micro.L_c; }

    /// Returns a copy with a different characteristic length.
    [[nodiscard]] FullParams with_L_c(double L_c) const;
    /// Returns a copy with a different Cosserat modulus.
    [[nodiscard]] FullParams with_mu_c(double mu_c) const;
};

/// mu_e = mu_M mu_m / (mu_m - mu_M), kappa_e = kappa_M kappa_m / (kappa_m - kappa_M),
/// lambda_e = kappa_e - mu_e.
EModuli derive_e_moduli(const MacroMicroParams& p);

/// Harmonic-mean recombination: mu_M = mu_e mu_m / (mu_e + mu_m),
/// kappa_M = kappa_e kappa_m / (kappa_e + kappa_m), lambda_M = kappa_M - mu_M.
MacroModuli recombine_macro(const EModuli& e, double lambda_m, double mu_m);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    [[nodiscard]] bool ok() const noexcept;
    /// One line per check: "PASS name: detail" / "FAIL name: detail".
    [[nodiscard]] std::string to_string() const;
};

/// Checks every invariant of an assembled parameter set. Never throws.
ValidationReport validate(const FullParams& p);

/// Validates tabulated moduli, including the degenerate cases that make
/// FullParams::from_macro_micro throw ("degenerate: infinite mu_e").
ValidationReport validate(const MacroMicroParams& p);

/// Table rows "set1", "set2", "set3" with mu_c = 0 and L_c = 0 (the caller
/// fixes L_c from a length ratio).
std::optional<MacroMicroParams> table_preset(std::string_view name);

}  // namespace rmm

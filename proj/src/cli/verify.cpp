#include "output.hpp"

#include "rmm/energy.hpp"
#include "rmm/governing.hpp"
#include "rmm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fmt/format.h>
#include <json.hpp>
#include <limits>
#include <ostream>

namespace rmm::cli {

using detail::num;
namespace {

struct Check {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double limit = 0.0;
    std::string detail;
};

constexpr double kBoundaryTol = 1e-12;
constexpr double kPoleTol = 1e-10;
constexpr double kAnalyticResidualTol = 1e-8;
constexpr double kSampledResidualTol = 1e-6;
constexpr std::size_t kSampledResidualCells = 2048;
// Grids must resolve the boundary layer of width 1/sqrt(a): at least this many
// cells per unit of sqrt(a) R.
constexpr double kCellsPerLayer = 32.0;
// Below this relative error the oracle is converged to its conditioning
// floor and the observed order is not meaningful.
constexpr double kConvergedError = 1e-7;
constexpr double kOrderLow = 1.8;
constexpr double kOrderHigh = 2.2;
constexpr double kShearTol = 1e-10;
constexpr double kLimitTol = 1e-3;
constexpr double kZeroPoissonTol = 1e-10;
constexpr std::size_t kEnergyTrials = 20;
constexpr double kEnergyAmplitude = 1e-3;
constexpr double kEnergySlack = 1e-6;

// Beyond a few thousand cells round-off (condition number ~ 1/h^2) outgrows
// the truncation error, so refinement stops here.
constexpr std::size_t kMaxLayerCells = 8192;

std::size_t layer_cells(const AxisymmetricSolution& sol, std::size_t minimum, double per_layer)
{
    const double need = per_layer * sol.coefficients().sqrt_a * sol.setup().R;
    std::size_t n = minimum;
    while (static_cast<double>(n) < need && n < kMaxLayerCells) {
        n *= 2;
    }
    return n;
}

double relative_to(double value, double target)
{
    const double d = std::abs(value - target);
    return target != 0.0 ? d / std::abs(target) : d;
}

Check boundary_u(const AxisymmetricSolution& sol)
{
    const double v = relative_to(sol.u_r(sol.setup().R), sol.setup().U0);
    return {"boundary u_r(R) = U0", v <= kBoundaryTol, v, kBoundaryTol, "relative error"};
}

Check boundary_p(const AxisymmetricSolution& sol)
{
    const auto& s = sol.setup();
    const double v = relative_to(sol.P(s.R).P_thth, s.U0 / s.R);
    return {"boundary P_thth(R) = U0/R", v <= kBoundaryTol, v, kBoundaryTol, "relative error"};
}

Check pole(const AxisymmetricSolution& sol)
{
    const auto& s = sol.setup();
    const MicroDistortion P = sol.P(0.0);
    const double strain = s.U0 != 0.0 ? std::abs(s.U0 / s.R) : 1.0;
    const double v = std::abs(P.P_rr - P.P_thth) / strain;
    return {"axis regularity P_rr(0) = P_thth(0)", v <= kPoleTol, v, kPoleTol, "|difference| / (U0/R)"};
}

Check analytic_residuals(const AxisymmetricSolution& sol)
{
    if (sol.coefficients().regime == SolutionRegime::sharp_layer) {
        return {"ode residuals (analytic derivatives)", true, 0.0, kAnalyticResidualTol,
                "skipped: boundary layer collapsed, interior fields constant"};
    }
    const auto& s = sol.setup();
    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double r = s.R * i / 201.0;
        const auto res = equation_residuals(sol.params(), r, sol.jets(r));
        for (std::size_t e = 0; e < kEquationCount; ++e) {
            worst = std::max(worst, std::abs(res[e]) / residual_scale(sol.params(), s, static_cast<Equation>(e)));
        }
    }
    return {"ode residuals (analytic derivatives)", worst < kAnalyticResidualTol, worst, kAnalyticResidualTol,
            "max scaled residual over 200 interior radii"};
}

Check sampled_residuals(const AxisymmetricSolution& sol, bool corrupt)
{
    const std::size_t n = layer_cells(sol, kSampledResidualCells, 2.0 * kCellsPerLayer);
    GridSolution g = sol.on_grid(RadialGrid(n, sol.setup().R));
    if (corrupt) {
        for (double& v : g.P_thth) {
            v *= 1.01;
        }
    }
    const ResidualReport rep = residuals(g, sol.params(), sol.setup());
    std::string worst_eq;
    for (const auto& e : rep.equations) {
        if (e.max_abs == rep.max_abs()) {
            worst_eq = std::string(equation_name(e.equation));
        }
    }
    return {fmt::format("ode residuals (sampled, n = {}{})", n, corrupt ? ", P_thth x 1.01" : ""),
            rep.max_abs() < kSampledResidualTol, rep.max_abs(), kSampledResidualTol,
            fmt::format("max scaled residual, worst equation {}, {:.0f} cells per layer width", worst_eq,
                        static_cast<double>(n) / (sol.coefficients().sqrt_a * sol.setup().R))};
}

std::vector<Check> oracle_checks(const AxisymmetricSolution& sol, std::size_t requested)
{
    if (requested < 128) {
        throw InputError(fmt::format("--cells must be at least 128 for the refinement study, got {}", requested));
    }
    const std::size_t cells = std::max(requested, layer_cells(sol, 128, kCellsPerLayer));
    std::vector<ConvergenceRow> rows;
    try {
        rows = convergence_study(sol.params(), sol.setup(), {cells / 4, cells / 2, cells});
    } catch (const SingularSystem& e) {
        return {{"oracle solve", false, e.rcond(), std::numeric_limits<double>::epsilon(), e.what()}};
    }
    const ConvergenceRow& last = rows.back();
    static const char* names[] = {"u_r", "P_rr", "P_thth"};

    std::vector<Check> out;
    for (std::size_t k = 0; k < 3; ++k) {
        Check c;
        c.name = fmt::format("oracle convergence order {} (n = {} -> {})", names[k], cells / 2, cells);
        c.limit = kOrderLow;
        if (last.order[k]) {
            c.measured = *last.order[k];
            const bool converged = last.max_rel_error[k] <= kConvergedError;
            c.passed = (c.measured >= kOrderLow && c.measured <= kOrderHigh) || converged;
            c.detail = fmt::format("expected [{}, {}]{}, max rel error {:.3e} at n = {}, {:.0f} cells per layer width",
                                   kOrderLow, kOrderHigh, converged ? " unless error <= 1e-7" : "",
                                   last.max_rel_error[k], cells,
                                   static_cast<double>(cells) / (sol.coefficients().sqrt_a * sol.setup().R));
        } else {
            c.measured = last.max_rel_error[k];
            c.passed = true;
            c.detail = fmt::format("errors at round-off ({:.3e}); no order", c.measured);
        }
        out.push_back(c);
    }

    double p_scale = 0.0;
    for (std::size_t i = 0; i <= 100; ++i) {
        p_scale = std::max(p_scale, std::abs(sol.P(sol.setup().R * i / 100.0).P_thth));
    }
    const double shear = p_scale > 0.0 ? last.max_shear / p_scale : last.max_shear;
    out.push_back({"oracle shear decoupling", shear < kShearTol, shear, kShearTol, "max |P_rth|, |P_thr| / max |P_thth|"});
    return out;
}

std::vector<Check> limit_checks(const FullParams& params, const ProblemSetup& setup, std::vector<std::string>& notes)
{
    std::vector<Check> out;
    const struct {
        LimitCase kind;
        const char* name;
    } cases[] = {{LimitCase::lc_infinity, "L_c -> inf (R/L_c = 1e-4)"}, {LimitCase::lc_zero, "L_c -> 0 (R/L_c = 1e4)"}};
    for (const auto& c : cases) {
        const LimitDeviation d = limit_deviation(c.kind, params, setup, LimitFormula::asymptotic);
        out.push_back({fmt::format("limit {}", c.name), d.max() <= kLimitTol, d.max(), kLimitTol,
                       fmt::format("vs asymptotic limit; u_r {:.2e}, P_rr {:.2e}, P_thth {:.2e}", d.u_r, d.P_rr, d.P_thth)});
        const LimitDeviation pub = limit_deviation(c.kind, params, setup, LimitFormula::published);
        notes.push_back(fmt::format("limit {}: deviation from the published limit formulas u_r {:.2e}, P_rr {:.2e}, "
                                    "P_thth {:.2e} (see README)",
                                    c.name, pub.u_r, pub.P_rr, pub.P_thth));
    }

    // same mu_e, mu_m with both Poisson ratios zero
    const FullParams zp = FullParams::from_e_moduli(0.0, params.mu_e(), 0.0, params.mu_m(), params.mu_c(),
                                                    params.L_c() > 0.0 ? params.L_c() : setup.R);
    if (compute_coefficients(zp, setup).sqrt_a * setup.R > kSharpLayerArgument) {
        notes.push_back("zero-Poisson reduction skipped: sqrt(a) R > 500, the dedicated formulas overflow");
        return out;
    }
    const LimitDeviation d = limit_deviation(LimitCase::zero_poisson, zp, setup, LimitFormula::published);
    out.push_back({"zero-Poisson reduction", d.max() <= kZeroPoissonTol, d.max(), kZeroPoissonTol,
                   "general solution vs dedicated formulas, lambda_e = lambda_m = 0"});
    return out;
}

Check mu_c_invariance(const FullParams& params, const ProblemSetup& setup)
{
    std::vector<FieldSample> ref;
    bool identical = true;
    for (double mu_c : {0.0, 1.0, 100.0}) {
        const AxisymmetricSolution sol(params.with_mu_c(mu_c), setup);
        std::vector<FieldSample> s;
        for (std::size_t i = 0; i <= 100; ++i) {
            s.push_back(sol.sample(setup.R * static_cast<double>(i) / 100.0));
        }
        if (ref.empty()) {
            ref = s;
        } else {
            identical = identical && std::memcmp(ref.data(), s.data(), s.size() * sizeof(FieldSample)) == 0;
        }
    }
    return {"mu_c invariance (0, 1, 100 GPa)", identical, identical ? 0.0 : 1.0, 0.0, "bit-identical field samples"};
}

Check energy_minimality(const AxisymmetricSolution& sol)
{
    const auto trials = minimality_trials(sol, kEnergyTrials, kEnergyAmplitude, 20240611u);
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& t : trials) {
        ok = ok && t.margin > 0.0 && t.margin >= (1.0 - kEnergySlack) * t.quadratic;
        worst = std::min(worst, t.quadratic > 0.0 ? t.margin / t.quadratic : 0.0);
    }
    return {"energy minimality (20 admissible variations)", ok, worst, 1.0 - kEnergySlack,
            "min of (E(sol + v) - E(sol)) / E(v)"};
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const FullParams params = resolve_params(cfg, true);
        const ProblemSetup setup{cfg.R, cfg.u0_over_r * cfg.R};
        const AxisymmetricSolution sol(params, setup);

        std::vector<Check> checks;
        std::vector<std::string> notes;
        checks.push_back(boundary_u(sol));
        checks.push_back(boundary_p(sol));
        checks.push_back(pole(sol));
        checks.push_back(analytic_residuals(sol));
        checks.push_back(sampled_residuals(sol, cfg.corrupt));
        if (sol.coefficients().regime == SolutionRegime::bessel) {
            for (auto& c : oracle_checks(sol, cfg.cells)) {
                checks.push_back(std::move(c));
            }
        } else {
            notes.push_back("oracle comparison skipped: boundary layer thinner than any practical grid");
        }
        for (auto& c : limit_checks(params, setup, notes)) {
            checks.push_back(std::move(c));
        }
        checks.push_back(mu_c_invariance(params, setup));
        if (sol.coefficients().regime == SolutionRegime::bessel) {
            checks.push_back(energy_minimality(sol));
        } else {
            notes.push_back("energy minimality skipped: sharp-layer fields are the L_c -> 0 limit, not the "
                            "finite-L_c minimiser");
        }

        bool all = true;
        std::string text = fmt::format("verify: {}, R/L_c = {}, U0/R = {}, cells = {}\n",
                                       cfg.preset ? *cfg.preset : std::string("config moduli"), num(*cfg.r_over_lc),
                                       num(cfg.u0_over_r), cfg.cells);
        nlohmann::json summary;
        summary["r_over_lc"] = *cfg.r_over_lc;
        summary["u0_over_r"] = cfg.u0_over_r;
        summary["cells"] = cfg.cells;
        if (cfg.preset) {
            summary["preset"] = *cfg.preset;
        }
        summary["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            all = all && c.passed;
            text += fmt::format("{} {}: {:.6e} (limit {:.3e}; {})\n", c.passed ? "PASS" : "FAIL", c.name, c.measured,
                                c.limit, c.detail);
            summary["checks"].push_back(
                {{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"limit", c.limit}, {"detail", c.detail}});
        }
        for (const auto& n : notes) {
            text += "INFO " + n + "\n";
        }
        summary["notes"] = notes;
        summary["passed"] = all;
        text += all ? "verify: all checks passed\n" : "verify: FAILED\n";

        out << text;
        if (cfg.out_path) {
            detail::emit(cfg, out, summary.dump(2) + "\n");
        }
        return all ? kExitOk : kExitCheckFailed;
    });
}

}  // namespace rmm::cli

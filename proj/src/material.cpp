#include "rmm/material.hpp"

#include <cmath>
#include <fmt/format.h>

namespace rmm {
namespace {

bool close_rel(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

bool all_finite(const MacroMicroParams& p)
{
    return std::isfinite(p.lambda_M) && std::isfinite(p.mu_M) && std::isfinite(p.lambda_m)
           && std::isfinite(p.mu_m) && std::isfinite(p.mu_c) && std::isfinite(p.L_c);
}

}  // namespace

EModuli derive_e_moduli(const MacroMicroParams& p)
{
    if (!all_finite(p)) {
        throw DegenerateParameters("degenerate: non-finite modulus");
    }
    if (!(p.mu_m > p.mu_M)) {
        throw DegenerateParameters(
            fmt::format("degenerate: infinite mu_e (mu_m = {} must exceed mu_M = {})", p.mu_m, p.mu_M));
    }
    const double kappa_M = p.lambda_M + p.mu_M;
    const double kappa_m = p.lambda_m + p.mu_m;
    if (!(kappa_m > kappa_M)) {
        throw DegenerateParameters(fmt::format(
            "degenerate: infinite kappa_e (kappa_m = {} must exceed kappa_M = {})", kappa_m, kappa_M));
    }
    EModuli e;
    e.mu_e = p.mu_M * p.mu_m / (p.mu_m - p.mu_M);
    e.kappa_e = kappa_M * kappa_m / (kappa_m - kappa_M);
    e.lambda_e = e.kappa_e - e.mu_e;
    return e;
}

MacroModuli recombine_macro(const EModuli& e, double lambda_m, double mu_m)
{
    const double kappa_m = lambda_m + mu_m;
    MacroModuli m;
    m.mu_M = e.mu_e * mu_m / (e.mu_e + mu_m);
    const double kappa_M = e.kappa_e * kappa_m / (e.kappa_e + kappa_m);
    m.lambda_M = kappa_M - m.mu_M;
    return m;
}

FullParams FullParams::from_macro_micro(const MacroMicroParams& p)
{
    FullParams f;
    f.macro_micro = p;
    f.e = derive_e_moduli(p);
    f.kappa_m = p.lambda_m + p.mu_m;
    f.kappa_M = p.lambda_M + p.mu_M;
    return f;
}

FullParams FullParams::from_e_moduli(double lambda_e, double mu_e, double lambda_m, double mu_m,
                                     double mu_c, double L_c)
{
    FullParams f;
    f.e = EModuli{lambda_e, mu_e, lambda_e + mu_e};
    const MacroModuli macro = recombine_macro(f.e, lambda_m, mu_m);
    f.macro_micro = MacroMicroParams{macro.lambda_M, macro.mu_M, lambda_m, mu_m, mu_c, L_c};
    f.kappa_m = lambda_m + mu_m;
    f.kappa_M = macro.lambda_M + macro.mu_M;
    return f;
}

FullParams FullParams::with_L_c(double L_c) const
{
    FullParams copy = *this;
    copy.macro_micro.L_c = L_c;
    return copy;
}

FullParams FullParams::with_mu_c(double mu_c) const
{
    FullParams copy = *this;
    copy.macro_micro.mu_c = mu_c;
    return copy;
}

bool ValidationReport::ok() const noexcept
{
    for (const auto& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

std::string ValidationReport::to_string() const
{
    std::string out;
    for (const auto& c : checks) {
        out += fmt::format("{} {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    }
    return out;
}

ValidationReport validate(const FullParams& p)
{
    ValidationReport report;
    auto add = [&report](std::string name, bool passed, std::string detail) {
        report.checks.push_back({std::move(name), passed, std::move(detail)});
    };
    auto positive = [&add](const char* name, double v) {
        add(fmt::format("{} > 0", name), std::isfinite(v) && v > 0.0, fmt::format("{} = {}", name, v));
    };

    positive("mu_e", p.e.mu_e);
    positive("kappa_e", p.e.kappa_e);
    positive("mu_m", p.mu_m());
    positive("kappa_m", p.kappa_m);
    positive("mu_M", p.mu_M());
    positive("kappa_M", p.kappa_M);

    const bool lambda_ok = std::isfinite(p.e.lambda_e) && p.e.kappa_e > 0.0;
    add("lambda_e admissible", lambda_ok,
        p.e.lambda_e < 0.0 && lambda_ok
            ? fmt::format("lambda_e = {} valid (kappa_e > 0)", p.e.lambda_e)
            : fmt::format("lambda_e = {}", p.e.lambda_e));

    add("kappa_e = lambda_e + mu_e", p.e.kappa_e == p.e.lambda_e + p.e.mu_e,
        fmt::format("kappa_e = {}, lambda_e + mu_e = {}", p.e.kappa_e, p.e.lambda_e + p.e.mu_e));

    const double inv_mu = 1.0 / p.e.mu_e + 1.0 / p.mu_m();
    add("1/mu_M = 1/mu_e + 1/mu_m", close_rel(1.0 / p.mu_M(), inv_mu, 1e-12),
        fmt::format("1/mu_M = {}, 1/mu_e + 1/mu_m = {}", 1.0 / p.mu_M(), inv_mu));
    const double inv_kappa = 1.0 / p.e.kappa_e + 1.0 / p.kappa_m;
    add("1/kappa_M = 1/kappa_e + 1/kappa_m", close_rel(1.0 / p.kappa_M, inv_kappa, 1e-12),
        fmt::format("1/kappa_M = {}, 1/kappa_e + 1/kappa_m = {}", 1.0 / p.kappa_M, inv_kappa));

    add("mu_c >= 0", std::isfinite(p.mu_c()) && p.mu_c() >= 0.0, fmt::format("mu_c = {}", p.mu_c()));
    add("L_c >= 0", std::isfinite(p.L_c()) && p.L_c() >= 0.0, fmt::format("L_c = {}", p.L_c()));
    return report;
}

ValidationReport validate(const MacroMicroParams& p)
{
    try {
        return validate(FullParams::from_macro_micro(p));
    } catch (const DegenerateParameters& err) {
        ValidationReport report;
        report.checks.push_back({"e-moduli derivable", false, err.what()});
        return report;
    }
}

std::optional<MacroMicroParams> table_preset(std::string_view name)
{
    if (name == "set1") {
        return MacroMicroParams{17.61, 16.13, 30.82, 28.23, 0.0, 0.0};
    }
    if (name == "set2") {
        return MacroMicroParams{1.75, 5.90, 11.30, 10.19, 0.0, 0.0};
    }
    if (name == "set3") {
        return MacroMicroParams{1.75, 5.90, 8.22, 10.55, 0.0, 0.0};
    }
    return std::nullopt;
}

}  // namespace rmm

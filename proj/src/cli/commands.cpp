#include "output.hpp"

#include "rmm/closed_form.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <future>
#include <ostream>

namespace rmm::cli {
namespace detail {

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text)
{
    if (!cfg.out_path) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(*cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw InputError(fmt::format("cannot write '{}'", *cfg.out_path));
    }
    file << text;
    if (!file) {
        throw InputError(fmt::format("write to '{}' failed", *cfg.out_path));
    }
}

int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const InputError& e) {
        err << "error: " << e.what() << (std::string_view(e.what()).ends_with('\n') ? "" : "\n");
    } catch (const std::invalid_argument& e) {  // includes DegenerateParameters
        err << "error: " << e.what() << "\n";
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitBadInput;
}

}  // namespace detail

using detail::num;

namespace {

std::vector<double> sample_radii(double R, std::size_t samples)
{
    if (samples < 2) {
        throw InputError(fmt::format("--samples must be at least 2, got {}", samples));
    }
    std::vector<double> r(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        r[i] = R * static_cast<double>(i) / static_cast<double>(samples - 1);
    }
    r.back() = R;
    return r;
}

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const FullParams params = resolve_params(cfg, true);
        const ProblemSetup setup{cfg.R, cfg.u0_over_r * cfg.R};
        const AxisymmetricSolution sol(params, setup);
        const std::vector<double> radii = sample_radii(cfg.R, cfg.samples);

        std::string csv =
            "r/R,u_r/U0,P_rr,P_thth,P_rth,P_thr,Z,sigma_rr,sigma_thth,sigma_micro_rr,sigma_micro_thth,"
            "m_zth,energy_density,delta\n";
        for (double r : radii) {
            const FieldSample f = sol.sample(r);
            const bool loaded = setup.U0 != 0.0;
            const double u_norm = loaded ? f.u_r / setup.U0 : 0.0;
            const double delta = loaded ? delta_metric(params, setup, r) : 0.0;
            csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(r / cfg.R), num(u_norm),
                               num(f.P_rr), num(f.P_thth), num(f.P_rth), num(f.P_thr), num(f.Z), num(f.sigma_rr),
                               num(f.sigma_thth), num(f.sigma_micro_rr), num(f.sigma_micro_thth), num(f.m_zth),
                               num(f.energy_density), num(delta));
        }
        detail::emit(cfg, out, csv);
        return kExitOk;
    });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        if (!cfg.sweep) {
            throw InputError("sweep needs --sweep <var>=<v1,v2,...>");
        }
        const SweepSpec& spec = *cfg.sweep;
        const bool beta = spec.variable != SweepVariable::r_over_lc;
        // source check and mu_c; L_c is set per point
        const FullParams base = resolve_params(cfg, false, beta);
        const double ratio = cfg.r_over_lc.value_or(kBetaSweepRatio);
        if (beta && !(ratio > 0.0 && std::isfinite(ratio))) {
            throw InputError(fmt::format("R/L_c must be positive and finite, got {}", ratio));
        }
        const std::vector<double> radii = sample_radii(cfg.R, cfg.samples);
        const ProblemSetup unit{cfg.R, 1.0};

        std::vector<std::future<std::string>> blocks;
        blocks.reserve(spec.values.size());
        for (double value : spec.values) {
            const MacroMicroParams point = sweep_point(base.macro_micro, cfg.R, spec.variable, value, ratio);
            blocks.push_back(std::async(std::launch::async, [point, value, &radii, unit] {
                const ValidationReport report = validate(point);
                if (!report.ok()) {
                    throw InputError(fmt::format("sweep value {}: invalid parameters\n{}", num(value), report.to_string()));
                }
                std::string text;
                try {
                    const FullParams params = FullParams::from_macro_micro(point);
                    for (double r : radii) {
                        text += fmt::format("{},{},{}\n", num(value), num(r / unit.R), num(delta_metric(params, unit, r)));
                    }
                } catch (const std::invalid_argument& e) {
                    throw InputError(fmt::format("sweep value {}: {}", num(value), e.what()));
                }
                return text;
            }));
        }

        std::string csv = "sweep_value,r/R,delta\n";
        for (auto& b : blocks) {
            csv += b.get();
        }
        detail::emit(cfg, out, csv);
        return kExitOk;
    });
}

int cmd_params(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const FullParams p = resolve_params(cfg, cfg.r_over_lc.has_value());
        // A, B, xi_i and a L_c^2 do not depend on L_c or R
        const SolutionCoefficients unit = compute_coefficients(p.with_L_c(1.0), ProblemSetup{1.0, 0.0});

        std::string text;
        auto line = [&text](const char* name, double v, const char* unit_name = "", const std::string& note = "") {
            text += fmt::format("{:<10} = {:>22.15g}{}{}{}\n", name, v, *unit_name ? " " : "", unit_name,
                                note.empty() ? "" : "  " + note);
        };
        if (cfg.preset) {
            text += fmt::format("parameter set: {}\n", *cfg.preset);
        }
        line("lambda_M", p.lambda_M(), "GPa");
        line("mu_M", p.mu_M(), "GPa");
        line("kappa_M", p.kappa_M, "GPa");
        line("lambda_m", p.lambda_m(), "GPa");
        line("mu_m", p.mu_m(), "GPa");
        line("kappa_m", p.kappa_m, "GPa");
        line("lambda_e", p.lambda_e(), "GPa", p.lambda_e() < 0.0 ? "valid (kappa_e > 0)" : "");
        line("mu_e", p.mu_e(), "GPa");
        line("kappa_e", p.kappa_e(), "GPa");
        line("mu_c", p.mu_c(), "GPa", "(inert for this problem)");
        line("a*L_c^2", unit.a);
        line("A", unit.A);
        line("B", unit.B);
        line("xi1", unit.xi1);
        line("xi2", unit.xi2);
        line("xi3", unit.xi3);
        if (cfg.r_over_lc) {
            const ProblemSetup setup{cfg.R, cfg.u0_over_r * cfg.R};
            const SolutionCoefficients c = compute_coefficients(p, setup);
            line("R/L_c", *cfg.r_over_lc);
            line("sqrt(a)*R", c.sqrt_a * cfg.R);
            line("C1", c.C1);
            line("D1", c.D1);
        }
        detail::emit(cfg, out, text);
        return kExitOk;
    });
}

}  // namespace rmm::cli

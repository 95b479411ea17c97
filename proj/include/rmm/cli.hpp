#pragma once

// Command-line front end: solve | sweep | verify | params.
//
// Exit codes: 0 success, 1 a verification check failed, 2 bad input or
// parameters that fail validation.

#include "rmm/closed_form.hpp"
#include "rmm/material.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Bad flags, unreadable config, invalid parameters. Maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepVariable { r_over_lc, beta1, beta2 };

struct SweepSpec {
    SweepVariable variable = SweepVariable::r_over_lc;
    std::vector<double> values;
};

/// "R_over_Lc=0.05,0.1", "beta1=1,2,3". Values must be positive and finite.
SweepSpec parse_sweep(const std::string& text);

struct RunConfig {
    std::optional<std::string> preset;
    std::optional<MacroMicroParams> moduli;  // from a config file (L_c ignored)
    std::optional<double> r_over_lc;
    double u0_over_r = 0.01;
    double R = 1.0;
    double mu_c = 0.0;
    std::size_t samples = 201;
    std::size_t cells = 512;
    std::optional<std::string> out_path;
    std::optional<SweepSpec> sweep;
    bool corrupt = false;  // verify self-test: scale sampled P_thth by 1.01
};

/// Reads a JSON config (keys lambda_M, mu_M, lambda_m, mu_m, mu_c, L_c, R, U0,
/// r_over_lc, u0_over_r, preset) into `cfg`. Unknown keys are an error.
void apply_config_file(const std::string& path, RunConfig& cfg);

/// Tabulated moduli from exactly one source, with mu_c and L_c = R / (R/L_c)
/// applied. With `fallback_set3`, no source means set 3. Throws InputError
/// (message includes the validation report) when the parameters are invalid.
FullParams resolve_params(const RunConfig& cfg, bool need_length, bool fallback_set3 = false);

/// Parameters at one sweep point: R/L_c replaced, or lambda_m = beta1 lambda_M,
/// or mu_m = beta2 mu_M, starting from `base`. Not validated.
MacroMicroParams sweep_point(MacroMicroParams base, double R, SweepVariable variable, double value,
                             double default_r_over_lc);

inline constexpr double kBetaSweepRatio = 5.0;

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_params(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full argument vector without the program name, e.g. {"solve", "--preset", "set3", ...}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmm::cli

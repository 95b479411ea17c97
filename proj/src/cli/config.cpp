#include "rmm/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>

namespace rmm::cli {
namespace {

double positive_finite(double v, const std::string& what)
{
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw InputError(fmt::format("{} must be positive and finite, got {}", what, v));
    }
    return v;
}

std::string lower(std::string s)
{
    for (char& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

}  // namespace

SweepSpec parse_sweep(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw InputError(fmt::format("--sweep expects <var>=<v1,v2,...>, got '{}'", text));
    }
    SweepSpec spec;
    const std::string name = lower(text.substr(0, eq));
    if (name == "r_over_lc") {
        spec.variable = SweepVariable::r_over_lc;
    } else if (name == "beta1") {
        spec.variable = SweepVariable::beta1;
    } else if (name == "beta2") {
        spec.variable = SweepVariable::beta2;
    } else {
        throw InputError(fmt::format("unknown sweep variable '{}' (R_over_Lc, beta1, beta2)", text.substr(0, eq)));
    }

    std::string list = text.substr(eq + 1);
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto comma = list.find(',', pos);
        const std::string item = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) {
            throw InputError(fmt::format("bad sweep value '{}'", item));
        }
        spec.values.push_back(positive_finite(v, "sweep value"));
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    if (spec.values.empty()) {
        throw InputError("sweep value list is empty");
    }
    return spec;
}

void apply_config_file(const std::string& path, RunConfig& cfg)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open config file '{}'", path));
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(fmt::format("config '{}': {}", path, e.what()));
    }
    if (!j.is_object()) {
        throw InputError(fmt::format("config '{}': top level must be an object", path));
    }

    static const std::vector<std::string> known = {"lambda_M", "mu_M", "lambda_m", "mu_m", "mu_c", "L_c",
                                                   "R", "U0", "r_over_lc", "u0_over_r", "preset"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw InputError(fmt::format("config '{}': unknown key '{}'", path, item.key()));
        }
    }

    try {
        auto num = [&](const char* key) -> std::optional<double> {
            if (!j.contains(key)) {
                return std::nullopt;
            }
            return j.at(key).get<double>();
        };
        if (j.contains("preset")) {
            cfg.preset = j.at("preset").get<std::string>();
        }
        const auto lM = num("lambda_M"), mM = num("mu_M"), lm = num("lambda_m"), mm = num("mu_m");
        const int given = lM.has_value() + mM.has_value() + lm.has_value() + mm.has_value();
        if (given != 0 && given != 4) {
            throw InputError(fmt::format("config '{}': lambda_M, mu_M, lambda_m, mu_m must be given together", path));
        }
        if (given == 4) {
            cfg.moduli = MacroMicroParams{*lM, *mM, *lm, *mm, 0.0, 0.0};
        }
        if (const auto v = num("R")) {
            cfg.R = positive_finite(*v, "R");
        }
        if (const auto v = num("mu_c")) {
            cfg.mu_c = *v;
        }
        if (const auto v = num("r_over_lc")) {
            cfg.r_over_lc = *v;
        } else if (const auto lc = num("L_c")) {
            cfg.r_over_lc = cfg.R / positive_finite(*lc, "L_c");
        }
        if (const auto v = num("u0_over_r")) {
            cfg.u0_over_r = *v;
        } else if (const auto u0 = num("U0")) {
            cfg.u0_over_r = *u0 / cfg.R;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(fmt::format("config '{}': {}", path, e.what()));
    }
}

FullParams resolve_params(const RunConfig& cfg, bool need_length, bool fallback_set3)
{
    if (cfg.preset && cfg.moduli) {
        throw InputError("exactly one parameter source allowed: preset or moduli from --config, not both");
    }
    MacroMicroParams base;
    if (cfg.preset) {
        const auto p = table_preset(*cfg.preset);
        if (!p) {
            throw InputError(fmt::format("unknown preset '{}' (set1, set2, set3)", *cfg.preset));
        }
        base = *p;
    } else if (cfg.moduli) {
        base = *cfg.moduli;
    } else if (fallback_set3) {
        base = *table_preset("set3");
    } else {
        throw InputError("no parameter source: give --preset or a --config with moduli");
    }

    base.mu_c = cfg.mu_c;
    if (!std::isfinite(cfg.u0_over_r)) {
        throw InputError("U0/R must be finite");
    }
    if (need_length) {
        if (!cfg.r_over_lc) {
            throw InputError("R/L_c is required (--r-over-lc or r_over_lc / L_c in --config)");
        }
        base.L_c = cfg.R / positive_finite(*cfg.r_over_lc, "R/L_c");
    }
    const ValidationReport report = validate(base);
    if (!report.ok()) {
        throw InputError("invalid parameters:\n" + report.to_string());
    }
    return FullParams::from_macro_micro(base);
}

MacroMicroParams sweep_point(MacroMicroParams base, double R, SweepVariable variable, double value,
                             double default_r_over_lc)
{
    switch (variable) {
    case SweepVariable::r_over_lc:
        base.L_c = R / value;
        return base;
    case SweepVariable::beta1:
        base.lambda_m = value * base.lambda_M;
        break;
    case SweepVariable::beta2:
        base.mu_m = value * base.mu_M;
        break;
    }
    base.L_c = R / default_r_over_lc;
    return base;
}

}  // namespace rmm::cli

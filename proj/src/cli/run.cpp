#include "output.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <ostream>

namespace rmm::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Axisymmetric extension of a cylinder in the relaxed micromorphic continuum", "rmm"};
    app.require_subcommand(1);

    std::optional<std::string> preset;
    std::optional<std::string> config;
    std::optional<double> r_over_lc;
    std::optional<double> u0_over_r;
    std::optional<double> mu_c;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> cells;
    std::optional<std::string> sweep;
    std::optional<std::string> out_path;
    bool corrupt = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--preset", preset, "Table parameter set")->check(CLI::IsMember({"set1", "set2", "set3"}));
        cmd->add_option("--config", config, "JSON config file");
        cmd->add_option("--r-over-lc", r_over_lc, "Radius over characteristic length R/L_c");
        cmd->add_option("--u0-over-r", u0_over_r, "Boundary strain U0/R (default 0.01)");
        cmd->add_option("--mu-c", mu_c, "Cosserat couple modulus in GPa (default 0, no effect on results)");
        cmd->add_option("--out", out_path, "Output file (default stdout)");
    };

    CLI::App* solve = app.add_subcommand("solve", "Radial profiles of all fields as CSV");
    add_common(solve);
    solve->add_option("--samples", samples, "Number of radii in [0, R] (default 201)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "delta(r) over a parameter sweep as long-format CSV");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--samples", samples, "Number of radii in [0, R] (default 201)");
    sweep_cmd->add_option("--sweep", sweep, "<R_over_Lc|beta1|beta2>=<v1,v2,...>")->required();

    CLI::App* verify = app.add_subcommand("verify", "Boundary, residual, oracle, limit, mu_c and energy checks");
    add_common(verify);
    verify->add_option("--cells", cells, "Finest oracle grid (default 512, >= 128)");
    verify->add_flag("--corrupt", corrupt, "Self-test: scale sampled P_thth by 1.01 before the residual check");

    CLI::App* params = app.add_subcommand("params", "Derived moduli and solution coefficients");
    add_common(params);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kExitBadInput;
    }

    return detail::guarded(err, [&] {
        RunConfig cfg;
        if (config) {
            apply_config_file(*config, cfg);
        }
        if (preset) {
            cfg.preset = preset;
        }
        if (r_over_lc) {
            cfg.r_over_lc = r_over_lc;
        }
        if (u0_over_r) {
            cfg.u0_over_r = *u0_over_r;
        }
        if (mu_c) {
            cfg.mu_c = *mu_c;
        }
        if (samples) {
            cfg.samples = *samples;
        }
        if (cells) {
            cfg.cells = *cells;
        }
        if (out_path) {
            cfg.out_path = out_path;
        }
        if (sweep) {
            cfg.sweep = parse_sweep(*sweep);
        }
        cfg.corrupt = corrupt;

        if (solve->parsed()) {
            return cmd_solve(cfg, out, err);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(cfg, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, out, err);
        }
        return cmd_params(cfg, out, err);
    });
}

}  // namespace rmm::cli

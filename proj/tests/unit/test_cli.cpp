#include "rmm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <gtest/gtest.h>
#include <sstream>

using namespace rmm;
using namespace rmm::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = "")
{
    const auto path = std::filesystem::temp_directory_path() / ("rmm_test_" + name);
    if (!content.empty()) {
        std::ofstream(path) << content;
    }
    return path;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        v.push_back(l);
    }
    return v;
}

std::vector<double> column(const std::string& csv, std::size_t col)
{
    std::vector<double> v;
    auto rows = lines(csv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream in(rows[i]);
        std::string cell;
        for (std::size_t c = 0; c <= col; ++c) {
            std::getline(in, cell, ',');
        }
        v.push_back(std::stod(cell));
    }
    return v;
}

constexpr const char* kSolveHeader =
    "r/R,u_r/U0,P_rr,P_thth,P_rth,P_thr,Z,sigma_rr,sigma_thth,sigma_micro_rr,sigma_micro_thth,m_zth,energy_density,delta";

}  // namespace

TEST(Params, Set1Derived)
{
    const Result r = call({"params", "--preset", "set1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("mu_e       =       37.632"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("kappa_e    =       78.71"), std::string::npos);
    EXPECT_EQ(r.out.find("C1"), std::string::npos);
}

TEST(Params, Set2NegativeLambdaIsValid)
{
    const Result r = call({"params", "--preset", "set2", "--r-over-lc", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("valid (kappa_e > 0)"), std::string::npos);
    EXPECT_NE(r.out.find("C1"), std::string::npos);
}

TEST(Params, DegenerateConfigRejected)
{
    const auto cfg = temp_file("degenerate.json", R"({"lambda_M": 1, "mu_M": 2, "lambda_m": 3, "mu_m": 2})");
    const Result r = call({"params", "--config", cfg.string()});
    EXPECT_EQ(r.code, kExitBadInput);
    EXPECT_NE(r.err.find("degenerate: infinite mu_e"), std::string::npos) << r.err;
}

TEST(Config, UnknownKeyAndPartialModuli)
{
    RunConfig cfg;
    EXPECT_THROW(apply_config_file(temp_file("unknown.json", R"({"mu_M": 1, "nu": 0.3})").string(), cfg), InputError);
    EXPECT_THROW(apply_config_file(temp_file("partial.json", R"({"mu_M": 1, "mu_m": 3})").string(), cfg), InputError);
    EXPECT_THROW(apply_config_file(temp_file("broken.json", "{not json").string(), cfg), InputError);
    EXPECT_THROW(apply_config_file("/nonexistent/rmm.json", cfg), InputError);
}

TEST(Config, FlagsOverrideFile)
{
    const auto cfg = temp_file("override.json", R"({"preset": "set3", "r_over_lc": 7, "u0_over_r": 0.02})");
    const Result r = call({"params", "--config", cfg.string(), "--r-over-lc", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("R/L_c      =                      2"), std::string::npos) << r.out;
}

TEST(ResolveParams, ExactlyOneSource)
{
    RunConfig cfg;
    EXPECT_THROW(resolve_params(cfg, false), InputError);
    EXPECT_NO_THROW(resolve_params(cfg, false, true));
    cfg.preset = "set3";
    EXPECT_THROW(resolve_params(cfg, true), InputError);
    cfg.r_over_lc = 2.0;
    EXPECT_DOUBLE_EQ(resolve_params(cfg, true).L_c(), 0.5);
    cfg.moduli = *table_preset("set1");
    EXPECT_THROW(resolve_params(cfg, true), InputError);
}

TEST(Solve, HeaderRowsAndDeterminism)
{
    const std::vector<std::string> args = {"solve", "--preset", "set3", "--r-over-lc", "2", "--samples", "11"};
    const Result a = call(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out.rfind(std::string(kSolveHeader) + "\n", 0), 0u);
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
    EXPECT_EQ(lines(a.out).size(), 12u);
    EXPECT_EQ(call(args).out, a.out);

    const auto u = column(a.out, 1);
    EXPECT_EQ(u.front(), 0.0);
    EXPECT_DOUBLE_EQ(u.back(), 1.0);
    EXPECT_DOUBLE_EQ(column(a.out, 3).back(), 0.01);
}

TEST(Solve, WritesToOutFile)
{
    const auto path = temp_file("solve.csv");
    std::filesystem::remove(path);
    const Result r = call({"solve", "--preset", "set2", "--r-over-lc", "5", "--out", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, kSolveHeader);
}

TEST(Solve, ZeroLoadGivesZeros)
{
    const Result r = call({"solve", "--preset", "set3", "--r-over-lc", "2", "--u0-over-r", "0", "--samples", "5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    for (std::size_t col = 1; col < 14; ++col) {
        for (double v : column(r.out, col)) {
            EXPECT_EQ(v, 0.0) << col;
        }
    }
}

TEST(Solve, ProportionalConfigIsClassical)
{
    const auto cfg = temp_file("proportional.json",
                               R"({"lambda_M": 17.61, "mu_M": 16.13, "lambda_m": 30.8175, "mu_m": 28.2275})");
    const Result r = call({"solve", "--config", cfg.string(), "--r-over-lc", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    for (double d : column(r.out, 13)) {
        EXPECT_LE(std::abs(d), 1e-12);
    }
}

TEST(Solve, RequiresLength)
{
    EXPECT_EQ(call({"solve", "--preset", "set3"}).code, kExitBadInput);
    EXPECT_EQ(call({"solve", "--preset", "set3", "--r-over-lc", "-1"}).code, kExitBadInput);
    EXPECT_EQ(call({"solve", "--preset", "set9", "--r-over-lc", "1"}).code, kExitBadInput);
    EXPECT_EQ(call({"bogus"}).code, kExitBadInput);
}

TEST(Sweep, ParseSpec)
{
    const SweepSpec s = parse_sweep("beta2=1.5,2.5");
    EXPECT_EQ(s.variable, SweepVariable::beta2);
    EXPECT_EQ(s.values, (std::vector<double>{1.5, 2.5}));
    EXPECT_EQ(parse_sweep("R_over_Lc=1").variable, SweepVariable::r_over_lc);
    EXPECT_THROW(parse_sweep("gamma=1"), InputError);
    EXPECT_THROW(parse_sweep("beta1="), InputError);
    EXPECT_THROW(parse_sweep("beta1=1,x"), InputError);
    EXPECT_THROW(parse_sweep("beta1=1,-2"), InputError);
}

TEST(Sweep, OutputOrderedByValue)
{
    const Result r = call({"sweep", "--preset", "set3", "--sweep", "R_over_Lc=2,0.5,10", "--samples", "3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0], "sweep_value,r/R,delta");
    EXPECT_EQ(column(r.out, 0), (std::vector<double>{2, 2, 2, 0.5, 0.5, 0.5, 10, 10, 10}));
}

TEST(Sweep, InvalidPointIsInputError)
{
    // beta2 = 1 makes mu_m = mu_M: infinite mu_e
    const Result r = call({"sweep", "--preset", "set3", "--sweep", "beta2=1.5,1"});
    EXPECT_EQ(r.code, kExitBadInput);
    EXPECT_NE(r.err.find("sweep value 1"), std::string::npos) << r.err;
}

TEST(Sweep, BetaPoint)
{
    const MacroMicroParams base = *table_preset("set3");
    const MacroMicroParams p = sweep_point(base, 1.0, SweepVariable::beta1, 3.0, kBetaSweepRatio);
    EXPECT_DOUBLE_EQ(p.lambda_m, 3.0 * base.lambda_M);
    EXPECT_DOUBLE_EQ(p.L_c, 1.0 / kBetaSweepRatio);
    EXPECT_EQ(p.mu_m, base.mu_m);
}

TEST(Verify, Set3PassesAndWritesJson)
{
    const auto path = temp_file("verify.json");
    std::filesystem::remove(path);
    const Result r = call({"verify", "--preset", "set3", "--r-over-lc", "2", "--out", path.string()});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    std::ifstream in(path);
    const std::string json((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(json.find("\"passed\""), std::string::npos) << json;
}

TEST(Verify, CorruptedSolutionFails)
{
    const Result r = call({"verify", "--preset", "set3", "--r-over-lc", "2", "--corrupt"});
    EXPECT_EQ(r.code, kExitCheckFailed);
    EXPECT_NE(r.out.find("FAIL ode residuals (sampled"), std::string::npos) << r.out;
}

TEST(Verify, TooFewCellsIsInputError)
{
    EXPECT_EQ(call({"verify", "--preset", "set3", "--r-over-lc", "2", "--cells", "64"}).code, kExitBadInput);
}

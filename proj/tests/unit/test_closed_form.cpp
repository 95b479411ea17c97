#include "rmm/closed_form.hpp"
#include "rmm/governing.hpp"
#include "rmm/oracle.hpp"
#include "rmm/specfun.hpp"
#include "random_params.hpp"

#include <cmath>
#include <cstring>
#include <gtest/gtest.h>

using namespace rmm;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

FullParams table(const char* name, double r_over_lc, double R = 1.0)
{
    MacroMicroParams p = *table_preset(name);
    p.L_c = R / r_over_lc;
    return FullParams::from_macro_micro(p);
}

FullParams zero_poisson(double mu_e, double mu_m, double L_c)
{
    return FullParams::from_e_moduli(0.0, mu_e, 0.0, mu_m, 0.0, L_c);
}

}  // namespace

TEST(Coefficients, ZeroPoissonEqualModuli)
{
    const double Lc = 0.37;
    const SolutionCoefficients c = compute_coefficients(zero_poisson(4.0, 4.0, Lc), {1.0, 0.01});
    EXPECT_LT(rel(c.a, 8.0 / (Lc * Lc)), 1e-14);
    EXPECT_DOUBLE_EQ(c.xi3, 0.5);
    EXPECT_EQ(c.B, 0.0);
    EXPECT_EQ(c.A, 1.0);
}

TEST(Coefficients, ProportionalModuliRemoveCoupling)
{
    MacroMicroParams p = fixtures::proportional_set1();
    p.L_c = 0.5;
    const SolutionCoefficients c = compute_coefficients(FullParams::from_macro_micro(p), {1.0, 0.01});
    EXPECT_LT(std::abs(c.B), 1e-12);
    EXPECT_LT(std::abs(c.A - 1.0), 1e-12);
}

TEST(Coefficients, SignInvariants)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const SolutionCoefficients c = compute_coefficients(fixtures::random_params(rng), {1.0, 0.01});
        ASSERT_GT(c.a, 0.0);
        ASSERT_LT(c.xi1, 0.0);
        ASSERT_LT(c.xi2, 0.0);
        ASSERT_GT(c.xi3, 0.0);
        ASSERT_LT(c.xi3, 1.0);
        // B - xi2 = 1 and the far-field trace b/a = C1 kappa_e mu_m (kappa_e + mu_e) / D
        ASSERT_NEAR(c.B - c.xi2, 1.0, 1e-13);
    }
}

TEST(Coefficients, BThroughC1)
{
    const FullParams p = table("set3", 2.0);
    const SolutionCoefficients c = compute_coefficients(p, {1.0, 0.01});
    const double b = 4.0 * c.C1 * p.kappa_e() * p.mu_m() / (p.mu_M() * p.L_c() * p.L_c() * (p.kappa_m + p.mu_m()));
    EXPECT_LT(rel(c.b, b), 1e-14);
    EXPECT_LT(rel(c.b / c.a, c.b_over_a), 1e-14);
}

TEST(Coefficients, RejectsBadSetup)
{
    const FullParams p = table("set3", 2.0);
    EXPECT_THROW(compute_coefficients(p, {0.0, 0.01}), std::invalid_argument);
    EXPECT_THROW(compute_coefficients(p, {-1.0, 0.01}), std::invalid_argument);
    EXPECT_THROW(compute_coefficients(p.with_L_c(-0.1), {1.0, 0.01}), std::invalid_argument);
}

TEST(Coefficients, MatchOracleFit)
{
    // Least-squares fit of the finite-difference solution to the two Bessel
    // shapes recovers C1 and D1.
    const FullParams p = table("set3", 2.0);
    const ProblemSetup s{1.0, 0.01};
    const SolutionCoefficients c = compute_coefficients(p, s);
    const GridSolution fd = solve_bvp(p, s, 4096).fields;

    auto fit = [&](auto f1, auto f2, const std::vector<double>& y) {
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double r = fd.grid.center(i);
            const double g1 = f1(r), g2 = f2(r);
            a11 += g1 * g1;
            a12 += g1 * g2;
            a22 += g2 * g2;
            b1 += g1 * y[i];
            b2 += g2 * y[i];
        }
        const double det = a11 * a22 - a12 * a12;
        return std::pair{(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det};
    };
    std::vector<double> Z(fd.grid.size());
    for (std::size_t i = 0; i < Z.size(); ++i) {
        Z[i] = fd.P_rr[i] + fd.P_thth[i];
    }
    const auto [far, d1] = fit([](double) { return 1.0; },
                               [&](double r) { return specfun::bessel_i0(c.sqrt_a * r); }, Z);
    const auto [lin, bessel] = fit([](double r) { return r; },
                                   [&](double r) { return r * specfun::bessel_i1_over_x(c.sqrt_a * r); }, fd.u_r);
    EXPECT_LT(rel(d1, c.D1), 1e-4);
    EXPECT_LT(rel(far, c.b_over_a), 1e-5);
    EXPECT_LT(rel(2.0 * lin / c.A, c.C1), 1e-5);
    EXPECT_LT(rel(bessel / c.B, c.D1), 1e-3);
}

TEST(Displacement, EndpointsAndDomain)
{
    const AxisymmetricSolution sol(table("set3", 2.0), {2.0, 0.03});
    EXPECT_EQ(sol.u_r(0.0), 0.0);
    EXPECT_LT(rel(sol.u_r(2.0), 0.03), 1e-12);
    EXPECT_THROW((void)sol.u_r(-1e-12), std::domain_error);
    EXPECT_THROW((void)sol.u_r(2.0 + 1e-9), std::domain_error);
    EXPECT_THROW((void)sol.P(3.0), std::domain_error);
}

TEST(Displacement, ProportionalModuliAreClassical)
{
    MacroMicroParams p = fixtures::proportional_set1();
    for (double ratio : {0.5, 2.0, 10.0}) {
        p.L_c = 1.0 / ratio;
        const AxisymmetricSolution sol(FullParams::from_macro_micro(p), {1.0, 0.01});
        for (int i = 0; i <= 200; ++i) {
            const double r = i / 200.0;
            ASSERT_LT(std::abs(sol.u_r(r) - 0.01 * r) / 0.01, 1e-10) << ratio << " " << r;
        }
    }
}

TEST(MicroDistortion, BoundaryAxisAndZeroLoad)
{
    const AxisymmetricSolution sol(table("set2", 5.0), {1.0, 0.02});
    EXPECT_LT(rel(sol.P(1.0).P_thth, 0.02), 1e-12);
    const MicroDistortion axis = sol.P(0.0);
    EXPECT_LT(std::abs(axis.P_rr - axis.P_thth), 1e-10 * 0.02);

    const AxisymmetricSolution unloaded(table("set2", 5.0), {1.0, 0.0});
    for (double r : {0.0, 0.3, 1.0}) {
        const MicroDistortion m = unloaded.P(r);
        EXPECT_EQ(m.P_rr, 0.0);
        EXPECT_EQ(m.P_thth, 0.0);
        EXPECT_EQ(m.Z, 0.0);
    }
}

TEST(MicroDistortion, TraceConsistency)
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
        const AxisymmetricSolution sol(fixtures::random_params(rng), {1.0, 0.01});
        for (int i = 0; i <= 20; ++i) {
            const MicroDistortion m = sol.P(i / 20.0);
            ASSERT_LE(std::abs(m.P_rr + m.P_thth - m.Z), 4e-16 * std::max(std::abs(m.Z), std::abs(m.P_thth)));
        }
    }
}

TEST(BoundaryConditions, RandomDraws)
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        const FullParams p = fixtures::random_params(rng);
        const ProblemSetup s{1.0, 0.01};
        const AxisymmetricSolution sol(p, s);
        ASSERT_LT(rel(sol.u_r(1.0), 0.01), 1e-12);
        ASSERT_LT(rel(sol.P(1.0).P_thth, 0.01), 1e-12);
        ASSERT_EQ(sol.sample(1.0).P_rth, 0.0);
    }
}

TEST(Linearity, TripleLoadTriplesFields)
{
    const FullParams p = table("set3", 3.0);
    const AxisymmetricSolution a(p, {1.0, 0.01});
    const AxisymmetricSolution b(p, {1.0, 0.03});
    for (double r : {0.0, 0.25, 0.6, 1.0}) {
        const FieldSample fa = a.sample(r);
        const FieldSample fb = b.sample(r);
        for (auto [x, y] : {std::pair{fa.u_r, fb.u_r}, {fa.P_rr, fb.P_rr}, {fa.P_thth, fb.P_thth},
                            {fa.sigma_rr, fb.sigma_rr}, {fa.m_zth, fb.m_zth}}) {
            if (x != 0.0) {
                EXPECT_LT(std::abs(y / x - 3.0), 1e-12) << r;
            }
        }
        EXPECT_LT(std::abs(fb.energy_density / fa.energy_density - 9.0), 1e-13);
    }
}

TEST(CosseratModulus, OutputsBitIdentical)
{
    const FullParams p = table("set3", 2.0);
    const AxisymmetricSolution ref(p, {1.0, 0.01});
    for (double mu_c : {1.0, 100.0}) {
        const AxisymmetricSolution other(p.with_mu_c(mu_c), {1.0, 0.01});
        for (int i = 0; i <= 50; ++i) {
            const FieldSample x = ref.sample(i / 50.0);
            const FieldSample y = other.sample(i / 50.0);
            ASSERT_EQ(std::memcmp(&x, &y, sizeof x), 0);
        }
    }
}

TEST(GoverningEquations, AnalyticResidualsVanish)
{
    std::mt19937_64 rng(99);
    for (int k = 0; k < 30; ++k) {
        const FullParams p = fixtures::random_params(rng);
        const ProblemSetup s{1.0, 0.01};
        const AxisymmetricSolution sol(p, s);
        for (int i = 1; i <= 200; ++i) {
            const double r = i / 201.0;
            const auto res = equation_residuals(p, r, sol.jets(r));
            for (std::size_t e = 0; e < kEquationCount; ++e) {
                ASSERT_LT(std::abs(res[e]) / residual_scale(p, s, static_cast<Equation>(e)), 1e-8)
                    << equation_name(static_cast<Equation>(e)) << " r = " << r;
            }
        }
    }
}

TEST(Kinematics, AxisLimits)
{
    const AxisymmetricSolution sol(table("set3", 4.0), {1.0, 0.01});
    const RadialKinematics k0 = sol.kinematics(0.0);
    const RadialKinematics k1 = sol.kinematics(1e-7);
    EXPECT_NEAR(k0.u_over_r, k1.u_r / 1e-7, 1e-9);
    EXPECT_NEAR(k0.u_over_r, k0.du_r, 1e-15);
    EXPECT_NEAR(k0.curl_zth, 0.0, 1e-15);
    // both branches of the hoop-shear evaluation agree where they meet
    const double x_switch = 0.1 / sol.coefficients().sqrt_a;
    EXPECT_NEAR(sol.kinematics(x_switch * (1 - 1e-9)).curl_zth, sol.kinematics(x_switch * (1 + 1e-9)).curl_zth,
                1e-12);
}

TEST(Stress, ZeroLoadGivesZeroStress)
{
    const AxisymmetricSolution sol(table("set3", 2.0), {1.0, 0.0});
    for (double r : {0.0, 0.5, 1.0}) {
        const FieldSample f = sol.sample(r);
        EXPECT_EQ(f.sigma_rr, 0.0);
        EXPECT_EQ(f.sigma_thth, 0.0);
        EXPECT_EQ(f.sigma_micro_rr, 0.0);
        EXPECT_EQ(f.sigma_micro_thth, 0.0);
        EXPECT_EQ(f.m_zth, 0.0);
    }
}

TEST(Stress, RadialEquilibrium)
{
    // d sigma_rr / dr + (sigma_rr - sigma_thth) / r = 0 without body force.
    for (const char* set : {"set1", "set2", "set3"}) {
        const AxisymmetricSolution sol(table(set, 2.0), {1.0, 0.01});
        const double ref = std::abs(sol.sample(1.0).sigma_rr);
        const double h = 1e-3;
        auto s_rr = [&](double r) { return sol.sample(r).sigma_rr; };
        for (int i = 1; i < 20; ++i) {
            const double r = i / 20.0;
            const double ds = (-s_rr(r + 2 * h) + 8 * s_rr(r + h) - 8 * s_rr(r - h) + s_rr(r - 2 * h)) / (12 * h);
            const FieldSample f = sol.sample(r);
            EXPECT_LT(std::abs(ds + (f.sigma_rr - f.sigma_thth) / r), 1e-8 * ref) << set << " r = " << r;
        }
    }
}

TEST(Stress, ClassicalCouplingStillHasLayer)
{
    // With B = 0 u_r is linear, but P keeps its boundary layer, so the force
    // stress is not uniform.
    MacroMicroParams p = fixtures::proportional_set1();
    p.L_c = 0.5;
    const AxisymmetricSolution sol(FullParams::from_macro_micro(p), {1.0, 0.01});
    EXPECT_GT(std::abs(sol.sample(0.1).sigma_rr - sol.sample(1.0).sigma_rr), 1e-3 * std::abs(sol.sample(1.0).sigma_rr));
}

TEST(Limits, PublishedFormulaExamples)
{
    const FullParams p = table("set3", 2.0);
    const ProblemSetup s{1.0, 0.01};
    for (double r : {0.0, 0.4, 1.0}) {
        EXPECT_DOUBLE_EQ(eval_limit(LimitCase::lc_zero, p, s, r).P_thth, 0.01);
        EXPECT_DOUBLE_EQ(eval_limit(LimitCase::lc_infinity, p, s, r).u_r, 0.01 * r);
        EXPECT_DOUBLE_EQ(eval_limit(LimitCase::lc_zero, p, s, r).u_r, 0.01 * r);
    }
    const FullParams zp = zero_poisson(3.0, 3.0, 0.4);
    EXPECT_LT(rel(eval_limit(LimitCase::zero_poisson, zp, s, 1.0).P_thth, 0.01), 1e-12);
    EXPECT_THROW(eval_limit(LimitCase::zero_poisson, p, s, 0.5), std::invalid_argument);
    EXPECT_THROW(eval_limit(LimitCase::lc_zero, p, s, 1.5), std::domain_error);
}

TEST(Limits, ZeroPoissonReduction)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mod(0.5, 50.0);
    for (int k = 0; k < 20; ++k) {
        const FullParams zp = zero_poisson(mod(rng), mod(rng), 1.0 / fixtures::random_ratio(rng, 0.1, 30.0));
        const ProblemSetup s{1.0, 0.01};
        const AxisymmetricSolution sol(zp, s);
        for (int i = 0; i < 100; ++i) {
            const double r = i / 99.0;
            const LimitFields l = eval_limit(LimitCase::zero_poisson, zp, s, r);
            const MicroDistortion m = sol.P(r);
            ASSERT_LT(std::abs(sol.u_r(r) - l.u_r), 1e-10 * 0.01);
            ASSERT_LT(rel(m.P_thth, l.P_thth), 1e-10);
            ASSERT_LT(rel(m.P_rr, l.P_rr), 1e-10);
        }
    }
}

TEST(Limits, GeneralSolutionApproachesAsymptoticLimits)
{
    for (const char* set : {"set1", "set2", "set3"}) {
        const FullParams p = table(set, 2.0);
        const ProblemSetup s{1.0, 0.01};
        EXPECT_LT(limit_deviation(LimitCase::lc_infinity, p, s, LimitFormula::asymptotic).max(), 1e-3) << set;
        EXPECT_LT(limit_deviation(LimitCase::lc_zero, p, s, LimitFormula::asymptotic).max(), 1e-3) << set;
    }
}

TEST(Limits, AsymptoticLcZeroInteriorIsBulkRatio)
{
    const FullParams p = table("set3", 2.0);
    const ProblemSetup s{1.0, 0.01};
    const LimitFields l = eval_limit(LimitCase::lc_zero, p, s, 0.5, LimitFormula::asymptotic);
    const double expect = p.kappa_e() / (p.kappa_e() + p.kappa_m) * 0.01;
    EXPECT_LT(rel(l.P_thth, expect), 1e-12);
    EXPECT_LT(rel(l.P_rr, expect), 1e-12);
    const LimitFields inf = eval_limit(LimitCase::lc_infinity, p, s, 0.5, LimitFormula::asymptotic);
    EXPECT_EQ(inf.P_rr, 0.01);
    EXPECT_EQ(inf.P_thth, 0.01);
}

TEST(SharpLayer, ZeroLengthDispatch)
{
    const FullParams p = table("set3", 2.0).with_L_c(0.0);
    const ProblemSetup s{1.0, 0.01};
    const AxisymmetricSolution sol(p, s);
    EXPECT_EQ(sol.coefficients().regime, SolutionRegime::sharp_layer);
    EXPECT_LT(rel(sol.u_r(1.0), 0.01), 1e-12);
    EXPECT_LT(rel(sol.P(1.0).P_thth, 0.01), 1e-12);
    const LimitFields l = eval_limit(LimitCase::lc_zero, p, s, 0.3, LimitFormula::asymptotic);
    EXPECT_LT(rel(sol.P(0.3).P_rr, l.P_rr), 1e-14);
    EXPECT_LT(rel(sol.P(0.3).P_thth, l.P_thth), 1e-14);
    EXPECT_TRUE(std::isfinite(sol.sample(0.5).energy_density));
}

TEST(SharpLayer, ContinuousAcrossThreshold)
{
    FullParams p = table("set3", 2.0);
    const ProblemSetup s{1.0, 0.01};
    const double sqrt_a_lc = compute_coefficients(p.with_L_c(1.0), s).sqrt_a;
    const AxisymmetricSolution below(p.with_L_c(sqrt_a_lc / (kSharpLayerArgument * 0.999)), s);
    const AxisymmetricSolution above(p.with_L_c(sqrt_a_lc / (kSharpLayerArgument * 1.001)), s);
    ASSERT_EQ(below.coefficients().regime, SolutionRegime::bessel);
    ASSERT_EQ(above.coefficients().regime, SolutionRegime::sharp_layer);
    for (double r : {0.0, 0.5, 0.9}) {
        EXPECT_LT(std::abs(below.P(r).P_rr - above.P(r).P_rr) / 0.01, 1e-2);
        EXPECT_LT(std::abs(below.u_r(r) - above.u_r(r)) / 0.01, 1e-2);
    }
}

TEST(Delta, EndpointsVanish)
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const FullParams p = fixtures::random_params(rng);
        EXPECT_EQ(delta_metric(p, {1.0, 0.01}, 0.0), 0.0);
        EXPECT_NEAR(delta_metric(p, {1.0, 0.01}, 1.0), 0.0, 1e-15);
    }
}

TEST(Delta, IndependentOfLoad)
{
    const FullParams p = table("set3", 5.0);
    EXPECT_EQ(delta_metric(p, {1.0, 0.01}, 0.4), delta_metric(p, {1.0, 7.0}, 0.4));
    EXPECT_EQ(delta_metric(p, {1.0, 0.0}, 0.4), delta_metric(p, {1.0, 1.0}, 0.4));
}

TEST(Delta, BetaOneIsStiffer)
{
    MacroMicroParams p = *table_preset("set3");
    p.lambda_m = p.lambda_M;
    p.L_c = 0.2;
    const FullParams fp = FullParams::from_macro_micro(p);
    for (int i = 1; i < 100; ++i) {
        EXPECT_LT(delta_metric(fp, {1.0, 0.01}, i / 100.0), 0.0);
    }
}

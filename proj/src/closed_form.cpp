#include "rmm/closed_form.hpp"

#include "rmm/energy.hpp"
#include "rmm/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <stdexcept>

namespace rmm {
namespace {

// Dimensionless groups shared by the general solution and the limit formulas.
struct ModulusGroups {
    double denom = 0.0;  // mu_e kappa_e (kappa_m + mu_m) + mu_m kappa_m (kappa_e + mu_e)
    double A = 1.0;
    double B = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double xi3 = 0.0;
    double q = 0.0;      // b / (a C1) = kappa_e mu_m (kappa_e + mu_e) / denom
};

ModulusGroups modulus_groups(const FullParams& p)
{
    const double le = p.lambda_e();
    const double me = p.mu_e();
    const double ke = p.kappa_e();
    const double lm = p.lambda_m();
    const double mm = p.mu_m();
    const double km = p.kappa_m;

    ModulusGroups g;
    g.denom = me * ke * (km + mm) + mm * km * (ke + me);
    const double coupling = mm * le - me * lm;
    g.A = 1.0 + coupling * ke / g.denom;
    g.B = coupling / (mm * (me + ke));
    g.xi1 = -(km + mm) / (2.0 * mm);
    g.xi2 = -me * (km + mm) / (mm * (ke + me));
    g.xi3 = km * mm * (ke + me) / g.denom;
    g.q = ke * mm * (ke + me) / g.denom;
    return g;
}

double squared_decay_rate(const FullParams& p)
{
    const double me = p.mu_e();
    const double ke = p.kappa_e();
    const double mm = p.mu_m();
    const double km = p.kappa_m;
    const double Lc = p.L_c();
    return 4.0 / (p.mu_M() * Lc * Lc) * (me * ke / (ke + me) + mm * km / (km + mm));
}

void check_radius(const ProblemSetup& setup, double r)
{
    if (!(r >= 0.0 && r <= setup.R)) {
        throw std::domain_error(fmt::format("radius {} outside [0, {}]", r, setup.R));
    }
}

bool at_boundary(const ProblemSetup& setup, double r) { return r >= setup.R; }

// Trace at r = R once the boundary layer has collapsed.
double sharp_layer_boundary_trace(const SolutionCoefficients& c, const ProblemSetup& setup)
{
    return c.b_over_a - setup.U0 * c.xi3 / (setup.R * c.A * c.xi1);
}

struct BesselAt {
    double x = 0.0;
    double i0 = 1.0;
    double i1 = 0.0;
    double i1_over_x = 0.5;
};

BesselAt bessel_at(const SolutionCoefficients& c, double r)
{
    BesselAt b;
    b.x = c.sqrt_a * r;
    b.i0 = specfun::bessel_i0(b.x);
    b.i1 = specfun::bessel_i1(b.x);
    b.i1_over_x = specfun::bessel_i1_over_x(b.x);
    return b;
}

}  // namespace

SolutionCoefficients compute_coefficients(const FullParams& params, const ProblemSetup& setup)
{
    if (!(setup.R > 0.0) || !std::isfinite(setup.R)) {
        throw std::invalid_argument(fmt::format("cylinder radius must be positive, got {}", setup.R));
    }
    if (!std::isfinite(setup.U0)) {
        throw std::invalid_argument("boundary displacement must be finite");
    }
    if (!(params.L_c() >= 0.0)) {
        throw std::invalid_argument(fmt::format("L_c must be >= 0, got {}", params.L_c()));
    }

    const ModulusGroups g = modulus_groups(params);
    SolutionCoefficients c;
    c.A = g.A;
    c.B = g.B;
    c.xi1 = g.xi1;
    c.xi2 = g.xi2;
    c.xi3 = g.xi3;

    const double a = params.L_c() > 0.0 ? squared_decay_rate(params)
                                        : std::numeric_limits<double>::infinity();
    const double s = std::sqrt(a) * setup.R;

    if (!(s <= kSharpLayerArgument)) {
        c.regime = SolutionRegime::sharp_layer;
        c.a = std::numeric_limits<double>::infinity();
        c.sqrt_a = c.a;
        c.C1 = 2.0 * setup.U0 / (setup.R * g.A);
        c.D1 = 0.0;
        c.b_over_a = c.C1 * g.q;
        c.b = c.C1 == 0.0 ? 0.0 : std::copysign(c.a, c.C1);
        return c;
    }

    const double i0 = specfun::bessel_i0(s);
    const double i1 = specfun::bessel_i1(s);
    const double layer = i1 * (2.0 * g.xi1 - g.xi2) - g.xi1 * s * i0;
    const double denominator = g.A * layer + g.B * g.xi3 * i1;
    if (!(std::abs(denominator) > 0.0) || !std::isfinite(denominator)) {
        throw DegenerateParameters(
            fmt::format("degenerate: closed-form denominator is {} (no solution)", denominator));
    }

    c.regime = SolutionRegime::bessel;
    c.a = a;
    c.sqrt_a = std::sqrt(a);
    c.C1 = 2.0 * setup.U0 / setup.R * layer / denominator;
    c.D1 = setup.U0 * g.xi3 * c.sqrt_a / denominator;
    const double km = params.kappa_m;
    const double mm = params.mu_m();
    const double Lc = params.L_c();
    c.b = 4.0 / (params.mu_M() * Lc * Lc) * c.C1 * params.kappa_e() * mm / (km + mm);
    c.b_over_a = c.C1 * g.q;
    return c;
}

double eval_u_r(const SolutionCoefficients& c, const FullParams&, const ProblemSetup& setup, double r)
{
    check_radius(setup, r);
    const double linear = 0.5 * c.C1 * c.A * r;
    if (c.regime == SolutionRegime::sharp_layer) {
        return linear;
    }
    // D1 B I1(x) / sqrt(a) = D1 B r I1(x)/x
    return linear + c.D1 * c.B * r * specfun::bessel_i1_over_x(c.sqrt_a * r);
}

MicroDistortion eval_P(const SolutionCoefficients& c, const FullParams&, const ProblemSetup& setup,
                       double r)
{
    check_radius(setup, r);
    MicroDistortion m;
    if (c.regime == SolutionRegime::sharp_layer) {
        if (at_boundary(setup, r)) {
            m.P_thth = setup.U0 / setup.R;
            m.Z = sharp_layer_boundary_trace(c, setup);
        } else {
            m.P_thth = 0.5 * c.C1 * (c.A - c.xi3);
            m.Z = c.b_over_a;
        }
        m.P_rr = m.Z - m.P_thth;
        return m;
    }
    const BesselAt bes = bessel_at(c, r);
    m.Z = c.b_over_a + c.D1 * bes.i0;
    m.P_thth = 0.5 * c.C1 * (c.A - c.xi3) - c.D1 * c.xi1 * bes.i0
               + c.D1 * (c.B + 2.0 * c.xi1 - c.xi2) * bes.i1_over_x;
    m.P_rr = m.Z - m.P_thth;
    return m;
}

FieldJets eval_jets(const SolutionCoefficients& c, const FullParams& params,
                    const ProblemSetup& setup, double r)
{
    const MicroDistortion P = eval_P(c, params, setup, r);
    FieldJets jets{};
    Jet& u = jets[index(Field::u_r)];
    Jet& prr = jets[index(Field::P_rr)];
    Jet& ptt = jets[index(Field::P_thth)];

    u.value = eval_u_r(c, params, setup, r);
    prr.value = P.P_rr;
    ptt.value = P.P_thth;
    u.d1 = 0.5 * c.C1 * c.A;
    if (c.regime == SolutionRegime::sharp_layer) {
        return jets;
    }

    const BesselAt bes = bessel_at(c, r);
    const double f1 = specfun::bessel_i1_over_x_d1(bes.x);
    const double f2 = specfun::bessel_i1_over_x_d2(bes.x);
    const double a = c.a;
    const double sa = c.sqrt_a;
    const double mix = c.B + 2.0 * c.xi1 - c.xi2;
    const double di1 = bes.i0 - bes.i1_over_x;  // I1'(x)

    u.d1 += c.D1 * c.B * di1;
    u.d2 = c.D1 * c.B * sa * (bes.i1 - f1);

    const double dZ = c.D1 * sa * bes.i1;
    const double d2Z = c.D1 * a * di1;
    ptt.d1 = -c.D1 * c.xi1 * sa * bes.i1 + c.D1 * mix * sa * f1;
    ptt.d2 = -c.D1 * c.xi1 * a * di1 + c.D1 * mix * a * f2;
    prr.d1 = dZ - ptt.d1;
    prr.d2 = d2Z - ptt.d2;
    return jets;
}

RadialKinematics eval_kinematics(const SolutionCoefficients& c, const FullParams& params,
                                 const ProblemSetup& setup, double r)
{
    const FieldJets jets = eval_jets(c, params, setup, r);
    RadialKinematics k;
    k.r = r;
    k.u_r = jets[index(Field::u_r)].value;
    k.du_r = jets[index(Field::u_r)].d1;
    k.P_rr = jets[index(Field::P_rr)].value;
    k.P_thth = jets[index(Field::P_thth)].value;
    k.dP_thth = jets[index(Field::P_thth)].d1;

    if (c.regime == SolutionRegime::sharp_layer) {
        k.u_over_r = 0.5 * c.C1 * c.A;
        k.curl_zth = r > 0.0 ? (k.P_thth - k.P_rr) / r : 0.0;
        return k;
    }

    const double x = c.sqrt_a * r;
    k.u_over_r = 0.5 * c.C1 * c.A + c.D1 * c.B * specfun::bessel_i1_over_x(x);
    // P_thth - P_rr = -D1 (2 xi1 + 1) x d/dx[I1(x)/x], which is O(r^2) at the
    // axis; dividing the series form by r avoids the cancellation.
    double hoop_shear = 0.0;
    if (x > 0.1) {
        hoop_shear = (k.P_thth - k.P_rr) / r;
    } else {
        hoop_shear = -c.D1 * (2.0 * c.xi1 + 1.0) * c.sqrt_a * specfun::bessel_i1_over_x_d1(x);
    }
    k.curl_zth = k.dP_thth + hoop_shear;
    return k;
}

StressState eval_stress(const RadialKinematics& k, const FullParams& params)
{
    const double me = params.mu_e();
    const double le = params.lambda_e();
    const double mm = params.mu_m();
    const double lm = params.lambda_m();

    const double X = k.du_r - k.P_rr;
    const double Y = k.u_over_r - k.P_thth;
    const double trace_e = X + Y;
    const double Z = k.P_rr + k.P_thth;

    StressState s;
    s.sigma_rr = 2.0 * me * X + le * trace_e;
    s.sigma_thth = 2.0 * me * Y + le * trace_e;
    s.sigma_micro_rr = 2.0 * mm * k.P_rr + lm * Z;
    s.sigma_micro_thth = 2.0 * mm * k.P_thth + lm * Z;
    s.m_zth = params.mu_M() * params.L_c() * params.L_c() * k.curl_zth;
    return s;
}

FieldSample eval_sample(const SolutionCoefficients& c, const FullParams& params,
                        const ProblemSetup& setup, double r)
{
    const RadialKinematics k = eval_kinematics(c, params, setup, r);
    const StressState s = eval_stress(k, params);
    FieldSample f;
    f.r = r;
    f.u_r = k.u_r;
    f.P_rr = k.P_rr;
    f.P_thth = k.P_thth;
    f.P_rth = 0.0;
    f.P_thr = 0.0;
    f.Z = k.P_rr + k.P_thth;
    f.sigma_rr = s.sigma_rr;
    f.sigma_thth = s.sigma_thth;
    f.sigma_micro_rr = s.sigma_micro_rr;
    f.sigma_micro_thth = s.sigma_micro_thth;
    f.m_zth = s.m_zth;
    f.energy_density = energy_density(params, k);
    return f;
}

double delta_metric(const FullParams& params, const ProblemSetup& setup, double r)
{
    const ProblemSetup unit{setup.R, 1.0};
    const SolutionCoefficients c = compute_coefficients(params, unit);
    return eval_u_r(c, params, unit, r) - r / setup.R;
}

LimitFields eval_limit(LimitCase kind, const FullParams& params, const ProblemSetup& setup, double r,
                       LimitFormula formula)
{
    check_radius(setup, r);
    const ModulusGroups g = modulus_groups(params);
    const double strain = setup.U0 / setup.R;
    LimitFields out;
    out.u_r = strain * r;

    switch (kind) {
    case LimitCase::zero_poisson: {
        constexpr double tol = 1e-12;
        if (std::abs(params.lambda_e()) > tol * params.mu_e()
            || std::abs(params.lambda_m()) > tol * params.mu_m()) {
            throw std::invalid_argument(
                fmt::format("zero-Poisson limit needs lambda_e = lambda_m = 0 (got {}, {})",
                            params.lambda_e(), params.lambda_m()));
        }
        if (!(params.L_c() > 0.0)) {
            throw std::domain_error("zero-Poisson formulas need L_c > 0");
        }
        const double me = params.mu_e();
        const double mm = params.mu_m();
        const double Lc = params.L_c();
        const double a = 2.0 / (Lc * Lc) * (me + mm) * (me + mm) / (me * mm);
        const double sa = std::sqrt(a);
        const double s = sa * setup.R;
        if (s > kSharpLayerArgument) {
            throw std::domain_error("zero-Poisson formulas overflow for sqrt(a) R > 500");
        }
        const double xi3 = mm / (me + mm);
        const double x = sa * r;
        const double wall = s * specfun::bessel_i0(s) - specfun::bessel_i1(s);
        // (x I0(x) - I1(x)) / r = sqrt(a) (I0(x) - I1(x)/x)
        const double shape = sa * (specfun::bessel_i0(x) - specfun::bessel_i1_over_x(x)) / wall;
        out.P_thth = strain * (1.0 - xi3) + shape * setup.U0 * xi3;
        const double ke = params.kappa_e();
        const double far = 2.0 * ke * mm * (me + ke) / g.denom;
        out.P_rr = strain * (far + xi3 * s * specfun::bessel_i0(x) / wall) - out.P_thth;
        return out;
    }
    case LimitCase::lc_zero: {
        if (formula == LimitFormula::published) {
            out.P_thth = strain;
            out.P_rr = g.q * 2.0 / g.A * strain - strain;
            return out;
        }
        if (at_boundary(setup, r)) {
            out.P_thth = strain;
            out.P_rr = strain * (2.0 * g.q - g.xi3 / g.xi1) / g.A - strain;
        } else {
            out.P_thth = strain * (1.0 - g.xi3 / g.A);
            out.P_rr = strain * (2.0 * g.q + g.xi3) / g.A - strain;
        }
        return out;
    }
    case LimitCase::lc_infinity: {
        out.P_thth = strain;
        if (formula == LimitFormula::published) {
            out.P_rr = g.q * (g.xi2 - g.xi3) * 2.0 * strain / (g.A * g.xi2 - g.B * g.xi3) - strain;
        } else {
            out.P_rr = strain;
        }
        return out;
    }
    }
    throw std::invalid_argument("unknown limit case");
}

double LimitDeviation::max() const noexcept { return std::max({u_r, P_rr, P_thth}); }

LimitDeviation limit_deviation(LimitCase kind, const FullParams& params, const ProblemSetup& setup,
                               LimitFormula formula, std::size_t radii)
{
    if (radii < 2) {
        throw std::invalid_argument("limit_deviation: need at least two radii");
    }
    FullParams general = params;
    if (kind == LimitCase::lc_infinity) {
        general = params.with_L_c(setup.R * kLimitLengthRatio);
    } else if (kind == LimitCase::lc_zero) {
        general = params.with_L_c(setup.R / kLimitLengthRatio);
    }
    const AxisymmetricSolution sol(general, setup);

    std::array<double, 3> diff{};
    std::array<double, 3> scale{};
    for (std::size_t i = 0; i < radii; ++i) {
        const double r = setup.R * static_cast<double>(i) / static_cast<double>(radii - 1);
        const LimitFields lim = eval_limit(kind, params, setup, r, formula);
        const MicroDistortion P = sol.P(r);
        const std::array<double, 3> g = {sol.u_r(r), P.P_rr, P.P_thth};
        const std::array<double, 3> l = {lim.u_r, lim.P_rr, lim.P_thth};
        for (std::size_t k = 0; k < 3; ++k) {
            diff[k] = std::max(diff[k], std::abs(g[k] - l[k]));
            scale[k] = std::max(scale[k], std::abs(l[k]));
        }
    }
    auto rel = [&](std::size_t k) { return scale[k] > 0.0 ? diff[k] / scale[k] : diff[k]; };
    return LimitDeviation{rel(0), rel(1), rel(2)};
}

AxisymmetricSolution::AxisymmetricSolution(FullParams params, ProblemSetup setup)
    : params_(params), setup_(setup), coeffs_(compute_coefficients(params_, setup_))
{
}

GridSolution AxisymmetricSolution::on_grid(const RadialGrid& grid) const
{
    GridSolution g(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.center(i);
        const MicroDistortion P = this->P(r);
        g.u_r[i] = u_r(r);
        g.P_rr[i] = P.P_rr;
        g.P_thth[i] = P.P_thth;
    }
    return g;
}

}  // namespace rmm

#include "rmm/governing.hpp"

#include "rmm/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmm {

std::string_view equation_name(Equation e)
{
    switch (e) {
    case Equation::radial_force: return "radial_force";
    case Equation::hoop_force: return "hoop_force";
    case Equation::micro_rr: return "micro_rr";
    case Equation::micro_rth: return "micro_rth";
    case Equation::micro_thr: return "micro_thr";
    case Equation::micro_thth: return "micro_thth";
    }
    return "unknown";
}

EquationTable equation_table(const FullParams& p, double r)
{
    if (!(r > 0.0)) {
        throw std::domain_error("equation_table: r must be positive");
    }
    const double me = p.mu_e();
    const double le = p.lambda_e();
    const double mm = p.mu_m();
    const double lm = p.lambda_m();
    const double mc = p.mu_c();
    const double L2 = p.mu_M() * p.L_c() * p.L_c();
    const double C = 2.0 * me + le;
    const double diag = C + 2.0 * mm + lm;
    const double r2 = r * r;

    constexpr std::size_t u = index(Field::u_r);
    constexpr std::size_t rr = index(Field::P_rr);
    constexpr std::size_t tt = index(Field::P_thth);
    constexpr std::size_t rt = index(Field::P_rth);
    constexpr std::size_t tr = index(Field::P_thr);

    EquationTable t{};

    auto& radial = t[index(Equation::radial_force)];
    radial[u] = {-C / r2, C / r, C};
    radial[rr] = {-2.0 * me / r, -C, 0.0};
    radial[tt] = {2.0 * me / r, -le, 0.0};

    auto& hoop = t[index(Equation::hoop_force)];
    hoop[rt] = {2.0 * me / r, me - mc, 0.0};
    hoop[tr] = {2.0 * me / r, me + mc, 0.0};

    auto& micro_rr = t[index(Equation::micro_rr)];
    micro_rr[u] = {le / r, C, 0.0};
    micro_rr[rr] = {-diag - L2 / r2, 0.0, 0.0};
    micro_rr[tt] = {-(le + lm) + L2 / r2, L2 / r, 0.0};

    auto& micro_rt = t[index(Equation::micro_rth)];
    micro_rt[rt] = {me + mm + mc + L2 / r2, 0.0, 0.0};
    micro_rt[tr] = {me + mm - mc + L2 / r2, L2 / r, 0.0};

    auto& micro_tr = t[index(Equation::micro_thr)];
    micro_tr[rt] = {me + mm - mc + L2 / r2, -L2 / r, 0.0};
    micro_tr[tr] = {me + mm + mc + L2 / r2, -L2 / r, -L2};

    auto& micro_tt = t[index(Equation::micro_thth)];
    micro_tt[u] = {C / r, le, 0.0};
    micro_tt[tt] = {-diag - L2 / r2, L2 / r, L2};
    micro_tt[rr] = {-(le + lm) + L2 / r2, -L2 / r, 0.0};
    return t;
}

std::array<double, kEquationCount> equation_residuals(const FullParams& params, double r,
                                                      const FieldJets& jets)
{
    const EquationTable t = equation_table(params, r);
    std::array<double, kEquationCount> out{};
    for (std::size_t e = 0; e < kEquationCount; ++e) {
        double sum = 0.0;
        for (std::size_t f = 0; f < kFieldCount; ++f) {
            sum += t[e][f][0] * jets[f].value + t[e][f][1] * jets[f].d1 + t[e][f][2] * jets[f].d2;
        }
        out[e] = sum;
    }
    return out;
}

double residual_scale(const FullParams& params, const ProblemSetup& setup, Equation e)
{
    const double U0 = setup.U0 != 0.0 ? std::abs(setup.U0) : setup.R;
    // the curvature terms carry mu_M L_c^2 / R^2, which dominates for L_c > R
    const double lc = params.L_c() / setup.R;
    const double stress = params.mu_M() * std::max(1.0, lc * lc) * U0 / setup.R;
    if (e == Equation::radial_force || e == Equation::hoop_force) {
        return stress / setup.R;
    }
    return stress;
}

}  // namespace rmm

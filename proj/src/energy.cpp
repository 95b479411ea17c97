#include "rmm/energy.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rmm {

double energy_density(const FullParams& params, const RadialKinematics& k)
{
    const double X = k.du_r - k.P_rr;
    const double Y = k.u_over_r - k.P_thth;
    const double S = k.P_rth + k.P_thr;
    const double T = k.P_rth - k.P_thr;
    const double trace_e = X + Y;
    const double trace_p = k.P_rr + k.P_thth;
    const double L2 = params.mu_M() * params.L_c() * params.L_c();

    return params.mu_e() * (X * X + Y * Y + 0.5 * S * S) + 0.5 * params.lambda_e() * trace_e * trace_e
           + 0.5 * params.mu_c() * T * T
           + params.mu_m() * (k.P_rr * k.P_rr + k.P_thth * k.P_thth + 0.5 * S * S)
           + 0.5 * params.lambda_m() * trace_p * trace_p
           + 0.5 * L2 * (k.curl_zr * k.curl_zr + k.curl_zth * k.curl_zth);
}

RadialProfile::RadialProfile(std::vector<double> nodes)
    : r(std::move(nodes)),
      u_r(r.size(), 0.0),
      du_r(r.size(), 0.0),
      P_rr(r.size(), 0.0),
      P_thth(r.size(), 0.0),
      dP_thth(r.size(), 0.0),
      P_rth(r.size(), 0.0),
      P_thr(r.size(), 0.0),
      dP_thr(r.size(), 0.0)
{
}

std::vector<double> uniform_nodes(double R, std::size_t count)
{
    if (count < 2) {
        throw std::invalid_argument("uniform_nodes: need at least two nodes");
    }
    std::vector<double> r(count);
    const double h = R / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        r[i] = static_cast<double>(i) * h;
    }
    r.back() = R;
    return r;
}

RadialProfile sample_profile(const AxisymmetricSolution& solution, std::size_t count)
{
    RadialProfile p(uniform_nodes(solution.setup().R, count));
    for (std::size_t i = 0; i < p.size(); ++i) {
        const RadialKinematics k = solution.kinematics(p.r[i]);
        p.u_r[i] = k.u_r;
        p.du_r[i] = k.du_r;
        p.P_rr[i] = k.P_rr;
        p.P_thth[i] = k.P_thth;
        p.dP_thth[i] = k.dP_thth;
    }
    return p;
}

double total_energy(const FullParams& params, const RadialProfile& profile)
{
    const std::size_t n = profile.r.size();
    for (const auto* v : {&profile.u_r, &profile.du_r, &profile.P_rr, &profile.P_thth, &profile.dP_thth,
                          &profile.P_rth, &profile.P_thr, &profile.dP_thr}) {
        if (v->size() != n) {
            throw std::invalid_argument("total_energy: profile arrays differ in length");
        }
    }
    if (n < 2) {
        throw std::invalid_argument("total_energy: need at least two nodes");
    }

    std::vector<double> f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = profile.r[i];
        if (r <= 0.0) {
            continue;  // W r -> 0 at the axis for regular fields
        }
        RadialKinematics k;
        k.r = r;
        k.u_r = profile.u_r[i];
        k.du_r = profile.du_r[i];
        k.u_over_r = profile.u_r[i] / r;
        k.P_rr = profile.P_rr[i];
        k.P_thth = profile.P_thth[i];
        k.P_rth = profile.P_rth[i];
        k.P_thr = profile.P_thr[i];
        k.dP_thth = profile.dP_thth[i];
        k.dP_thr = profile.dP_thr[i];
        k.curl_zr = k.dP_thr + (k.P_rth + k.P_thr) / r;
        k.curl_zth = k.dP_thth + (k.P_thth - k.P_rr) / r;
        f[i] = energy_density(params, k) * r;
    }

    const double h = (profile.r.back() - profile.r.front()) / static_cast<double>(n - 1);
    double sum = 0.0;
    if (n % 2 == 1 && n >= 3) {
        sum = f.front() + f.back();
        for (std::size_t i = 1; i + 1 < n; ++i) {
            sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
        }
        sum *= h / 3.0;
    } else {
        sum = 0.5 * (f.front() + f.back());
        for (std::size_t i = 1; i + 1 < n; ++i) {
            sum += f[i];
        }
        sum *= h;
    }
    return 2.0 * std::numbers::pi * sum;
}

RadialProfile random_variation(const std::vector<double>& nodes, double R, double amplitude, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> mode(1, 3);
    constexpr double pi = std::numbers::pi;

    // strain scale `amplitude`; u_r carries an extra factor R
    const double cu = coef(rng), ct = coef(rng), cr = coef(rng), c0 = coef(rng);
    const double cs = coef(rng), cq = coef(rng);
    const double ku = mode(rng) * pi, kt = mode(rng) * pi, kr = mode(rng) * pi;
    const double ks = mode(rng) * pi, kq = (mode(rng) - 0.5) * pi;

    RadialProfile p(nodes);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p.r[i] / R;
        p.u_r[i] = amplitude * R * cu * std::sin(ku * x);
        p.du_r[i] = amplitude * cu * ku * std::cos(ku * x);
        // common axis value c0 keeps (P_thth - P_rr)/r bounded
        p.P_thth[i] = amplitude * (ct * std::sin(kt * x) + c0 * (1.0 - x * x));
        p.dP_thth[i] = amplitude * (ct * kt * std::cos(kt * x) - 2.0 * c0 * x) / R;
        p.P_rr[i] = amplitude * (c0 + cr * std::sin(kr * x));
        p.P_rth[i] = amplitude * cs * std::sin(ks * x);
        p.P_thr[i] = amplitude * cq * std::sin(kq * x);
        p.dP_thr[i] = amplitude * cq * kq * std::cos(kq * x) / R;
    }
    return p;
}

RadialProfile add_profiles(const RadialProfile& a, const RadialProfile& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("add_profiles: node counts differ");
    }
    RadialProfile s(a.r);
    for (std::size_t i = 0; i < a.size(); ++i) {
        s.u_r[i] = a.u_r[i] + b.u_r[i];
        s.du_r[i] = a.du_r[i] + b.du_r[i];
        s.P_rr[i] = a.P_rr[i] + b.P_rr[i];
        s.P_thth[i] = a.P_thth[i] + b.P_thth[i];
        s.dP_thth[i] = a.dP_thth[i] + b.dP_thth[i];
        s.P_rth[i] = a.P_rth[i] + b.P_rth[i];
        s.P_thr[i] = a.P_thr[i] + b.P_thr[i];
        s.dP_thr[i] = a.dP_thr[i] + b.dP_thr[i];
    }
    return s;
}

std::vector<MinimalityTrial> minimality_trials(const AxisymmetricSolution& solution, std::size_t trials,
                                               double amplitude, std::uint64_t seed, std::size_t nodes)
{
    const FullParams& params = solution.params();
    const RadialProfile base = sample_profile(solution, nodes);
    const double e0 = total_energy(params, base);
    std::vector<MinimalityTrial> out;
    out.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const RadialProfile dv = random_variation(base.r, solution.setup().R, amplitude, seed + t);
        MinimalityTrial trial;
        trial.margin = total_energy(params, add_profiles(base, dv)) - e0;
        trial.quadratic = total_energy(params, dv);
        out.push_back(trial);
    }
    return out;
}

}  // namespace rmm

#include "rmm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <lapacke.h>
#include <limits>

namespace rmm {
namespace {

constexpr lapack_int kLower = 19;  // deepest reach: last-cell one-sided d2 three cells back
constexpr lapack_int kUpper = 9;

// Band storage for LAPACK's dgbtrf (extra kLower rows for fill-in).
class BandMatrix {
public:
    explicit BandMatrix(lapack_int n) : n_(n), ld_(2 * kLower + kUpper + 1), ab_(static_cast<std::size_t>(ld_) * n, 0.0) {}

    void add(lapack_int i, lapack_int j, double v)
    {
        if (j - i > kUpper || i - j > kLower) {
            throw std::logic_error(fmt::format("band overflow at ({}, {})", i, j));
        }
        ab_[static_cast<std::size_t>(j) * ld_ + (kLower + kUpper + i - j)] += v;
    }

    [[nodiscard]] double one_norm() const
    {
        double best = 0.0;
        for (lapack_int j = 0; j < n_; ++j) {
            double s = 0.0;
            for (lapack_int k = kLower; k < ld_; ++k) {
                s += std::abs(ab_[static_cast<std::size_t>(j) * ld_ + k]);
            }
            best = std::max(best, s);
        }
        return best;
    }

    double* data() { return ab_.data(); }
    [[nodiscard]] lapack_int ld() const { return ld_; }
    [[nodiscard]] lapack_int size() const { return n_; }

private:
    lapack_int n_;
    lapack_int ld_;
    std::vector<double> ab_;
};

class Assembler {
public:
    Assembler(std::size_t n, double h, const ProblemSetup& setup)
        : n_(static_cast<long>(n)), h_(h), A_(static_cast<lapack_int>(5 * n)), rhs_(5 * n, 0.0)
    {
        has_outer_[index(Field::u_r)] = true;
        has_outer_[index(Field::P_thth)] = true;
        has_outer_[index(Field::P_rth)] = true;
        outer_[index(Field::u_r)] = setup.U0;
        outer_[index(Field::P_thth)] = setup.U0 / setup.R;
        outer_[index(Field::P_rth)] = 0.0;
    }

    // w * v_k at cell j, with ghosts resolved.
    void value(long row, long j, std::size_t k, double w)
    {
        if (j < 0) {
            const double parity = k == index(Field::u_r) ? -1.0 : 1.0;
            value(row, -j - 1, k, parity * w);
            return;
        }
        if (j >= n_) {
            // v_n = -2 v_{n-1} + v_{n-2}/3 + 8 g/3
            value(row, n_ - 1, k, -2.0 * w);
            value(row, n_ - 2, k, w / 3.0);
            rhs_[static_cast<std::size_t>(row)] -= w * 8.0 / 3.0 * outer_[k];
            return;
        }
        A_.add(static_cast<lapack_int>(row), static_cast<lapack_int>(5 * j + static_cast<long>(k)), w);
    }

    void d1(long row, long i, std::size_t k, double w)
    {
        if (w == 0.0) {
            return;
        }
        if (i == n_ - 1 && !has_outer_[k]) {
            value(row, i, k, 1.5 * w / h_);
            value(row, i - 1, k, -2.0 * w / h_);
            value(row, i - 2, k, 0.5 * w / h_);
            return;
        }
        value(row, i + 1, k, 0.5 * w / h_);
        value(row, i - 1, k, -0.5 * w / h_);
    }

    void d2(long row, long i, std::size_t k, double w)
    {
        if (w == 0.0) {
            return;
        }
        const double s = w / (h_ * h_);
        if (i == n_ - 1 && !has_outer_[k]) {
            value(row, i, k, 2.0 * s);
            value(row, i - 1, k, -5.0 * s);
            value(row, i - 2, k, 4.0 * s);
            value(row, i - 3, k, -s);
            return;
        }
        value(row, i + 1, k, s);
        value(row, i, k, -2.0 * s);
        value(row, i - 1, k, s);
    }

    BandMatrix& matrix() { return A_; }
    std::vector<double>& rhs() { return rhs_; }

private:
    long n_;
    double h_;
    BandMatrix A_;
    std::vector<double> rhs_;
    std::array<bool, kFieldCount> has_outer_{};
    std::array<double, kFieldCount> outer_{};
};

constexpr std::array<Equation, 5> kRowEquations = {
    Equation::radial_force, Equation::micro_rr, Equation::micro_thth, Equation::micro_rth, Equation::micro_thr,
};

}  // namespace

BvpResult solve_bvp(const FullParams& params, const ProblemSetup& setup, std::size_t n_cells)
{
    if (n_cells < kMinOracleCells) {
        throw std::invalid_argument(fmt::format("solve_bvp: need at least {} cells, got {}", kMinOracleCells, n_cells));
    }
    if (!(params.L_c() > 0.0)) {
        throw std::invalid_argument("solve_bvp: L_c must be positive");
    }
    RadialGrid grid(n_cells, setup.R);
    const double h = grid.spacing();
    Assembler as(n_cells, h, setup);

    for (std::size_t i = 0; i < n_cells; ++i) {
        const EquationTable table = equation_table(params, grid.center(i));
        for (std::size_t e = 0; e < kRowEquations.size(); ++e) {
            const long row = static_cast<long>(5 * i + e);
            const long cell = static_cast<long>(i);
            const EquationRow& coeffs = table[index(kRowEquations[e])];
            for (std::size_t k = 0; k < kFieldCount; ++k) {
                if (coeffs[k][0] != 0.0) {
                    as.value(row, cell, k, coeffs[k][0]);
                }
                as.d1(row, cell, k, coeffs[k][1]);
                as.d2(row, cell, k, coeffs[k][2]);
            }
        }
    }

    BandMatrix& A = as.matrix();
    std::vector<double>& b = as.rhs();
    const lapack_int N = A.size();
    const double anorm = A.one_norm();
    std::vector<lapack_int> pivots(static_cast<std::size_t>(N));

    lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, N, N, kLower, kUpper, A.data(), A.ld(), pivots.data());
    if (info != 0) {
        throw SingularSystem(fmt::format("solve_bvp: banded LU failed (info = {})", info), 0.0);
    }
    double rcond = 0.0;
    info = LAPACKE_dgbcon(LAPACK_COL_MAJOR, '1', N, kLower, kUpper, A.data(), A.ld(), pivots.data(), anorm, &rcond);
    if (info != 0 || rcond < std::numeric_limits<double>::epsilon()) {
        throw SingularSystem(fmt::format("solve_bvp: system singular to working precision (rcond = {:.3e})", rcond),
                             rcond);
    }
    info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', N, kLower, kUpper, 1, A.data(), A.ld(), pivots.data(), b.data(), N);
    if (info != 0) {
        throw SingularSystem(fmt::format("solve_bvp: back substitution failed (info = {})", info), rcond);
    }

    BvpResult out{GridSolution(grid), rcond};
    for (std::size_t i = 0; i < n_cells; ++i) {
        for (std::size_t k = 0; k < kFieldCount; ++k) {
            out.fields[static_cast<Field>(k)][i] = b[5 * i + k];
        }
    }
    return out;
}

double face_value(const std::vector<double>& cells)
{
    const std::size_t n = cells.size();
    if (n < 3) {
        throw std::invalid_argument("face_value: need three cells");
    }
    return (15.0 * cells[n - 1] - 10.0 * cells[n - 2] + 3.0 * cells[n - 3]) / 8.0;
}

double ResidualReport::max_abs() const noexcept
{
    double m = 0.0;
    for (const auto& e : equations) {
        m = std::max(m, e.max_abs);
    }
    return m;
}

ResidualReport residuals(const GridSolution& fields, const FullParams& params, const ProblemSetup& setup)
{
    const std::size_t n = fields.grid.size();
    if (n < 5) {
        throw std::invalid_argument("residuals: need at least 5 cells");
    }
    ResidualReport report;
    if (n < kResidualMinCells) {
        report.warning = fmt::format("grid too coarse for residual check: {} cells (< {})", n, kResidualMinCells);
    }
    const double h = fields.grid.spacing();
    std::array<double, kEquationCount> scale{};
    for (std::size_t e = 0; e < kEquationCount; ++e) {
        report.equations[e].equation = static_cast<Equation>(e);
        scale[e] = residual_scale(params, setup, static_cast<Equation>(e));
    }

    std::array<double, kEquationCount> sum_sq{};
    for (std::size_t i = 2; i + 2 < n; ++i) {
        FieldJets jets{};
        for (std::size_t k = 0; k < kFieldCount; ++k) {
            const auto& f = fields[static_cast<Field>(k)];
            jets[k].value = f[i];
            jets[k].d1 = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
            jets[k].d2 = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) / (12.0 * h * h);
        }
        const auto res = equation_residuals(params, fields.grid.center(i), jets);
        for (std::size_t e = 0; e < kEquationCount; ++e) {
            const double v = std::abs(res[e]) / scale[e];
            report.equations[e].max_abs = std::max(report.equations[e].max_abs, v);
            sum_sq[e] += v * v;
        }
        ++report.cells_checked;
    }
    for (std::size_t e = 0; e < kEquationCount; ++e) {
        report.equations[e].rms = std::sqrt(sum_sq[e] / static_cast<double>(report.cells_checked));
    }
    return report;
}

std::vector<ConvergenceRow> convergence_study(const FullParams& params, const ProblemSetup& setup,
                                              const std::vector<std::size_t>& n_list)
{
    for (std::size_t j = 0; j < n_list.size(); ++j) {
        if (n_list[j] < 32 || (j > 0 && n_list[j] <= n_list[j - 1])) {
            throw std::invalid_argument("convergence_study: n_list must be ascending with entries >= 32");
        }
    }
    const AxisymmetricSolution exact(params, setup);
    constexpr std::array<Field, 3> compared = {Field::u_r, Field::P_rr, Field::P_thth};

    std::vector<ConvergenceRow> rows;
    for (std::size_t n : n_list) {
        const BvpResult fd = solve_bvp(params, setup, n);
        const GridSolution ref = exact.on_grid(fd.fields.grid);
        ConvergenceRow row;
        row.n_cells = n;
        for (std::size_t c = 0; c < compared.size(); ++c) {
            const auto& a = fd.fields[compared[c]];
            const auto& b = ref[compared[c]];
            double err = 0.0;
            double mag = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                err = std::max(err, std::abs(a[i] - b[i]));
                mag = std::max(mag, std::abs(b[i]));
            }
            row.max_rel_error[c] = mag > 0.0 ? err / mag : err;
        }
        for (std::size_t i = 0; i < n; ++i) {
            row.max_shear = std::max({row.max_shear, std::abs(fd.fields.P_rth[i]), std::abs(fd.fields.P_thr[i])});
        }
        if (!rows.empty()) {
            const ConvergenceRow& prev = rows.back();
            const double ratio = std::log(static_cast<double>(n) / static_cast<double>(prev.n_cells));
            for (std::size_t c = 0; c < compared.size(); ++c) {
                const double e0 = prev.max_rel_error[c];
                const double e1 = row.max_rel_error[c];
                if (e0 > kConvergenceNoiseFloor && e1 > kConvergenceNoiseFloor) {
                    row.order[c] = std::log(e0 / e1) / ratio;
                }
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rmm

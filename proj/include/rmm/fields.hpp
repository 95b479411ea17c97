#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace rmm {

/// Unknown fields of the axisymmetric problem, in storage order.
enum class Field : std::size_t { u_r = 0, P_rr = 1, P_thth = 2, P_rth = 3, P_thr = 4 };

inline constexpr std::size_t kFieldCount = 5;

constexpr std::size_t index(Field f) noexcept { return static_cast<std::size_t>(f); }

/// Value and first two radial derivatives of one field at one radius.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

using FieldJets = std::array<Jet, kFieldCount>;

/// Uniform cell-centred grid on (0, R): centres (i + 1/2) h, h = R / n_cells.
/// No node sits on the axis.
class RadialGrid {
public:
    RadialGrid(std::size_t n_cells, double R);

    [[nodiscard]] std::size_t size() const noexcept { return centers_.size(); }
    [[nodiscard]] double R() const noexcept { return R_; }
    [[nodiscard]] double spacing() const noexcept { return h_; }
    [[nodiscard]] double center(std::size_t i) const { return centers_.at(i); }
    [[nodiscard]] const std::vector<double>& centers() const noexcept { return centers_; }

private:
    double R_;
    double h_;
    std::vector<double> centers_;
};

/// Discrete field arrays on a RadialGrid; every array has grid.size() entries.
struct GridSolution {
    RadialGrid grid;
    std::vector<double> u_r;
    std::vector<double> P_rr;
    std::vector<double> P_thth;
    std::vector<double> P_rth;
    std::vector<double> P_thr;

    explicit GridSolution(RadialGrid g);

    [[nodiscard]] std::vector<double>& operator[](Field f);
    [[nodiscard]] const std::vector<double>& operator[](Field f) const;
};

}  // namespace rmm

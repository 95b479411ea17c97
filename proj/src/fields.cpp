#include "rmm/fields.hpp"

#include <stdexcept>

namespace rmm {

RadialGrid::RadialGrid(std::size_t n_cells, double R) : R_(R), h_(0.0)
{
    if (n_cells == 0) {
        throw std::invalid_argument("RadialGrid: need at least one cell");
    }
    if (!(R > 0.0)) {
        throw std::invalid_argument("RadialGrid: radius must be positive");
    }
    h_ = R / static_cast<double>(n_cells);
    centers_.resize(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) {
        centers_[i] = (static_cast<double>(i) + 0.5) * h_;
    }
}

GridSolution::GridSolution(RadialGrid g)
    : grid(std::move(g)),
      u_r(grid.size(), 0.0),
      P_rr(grid.size(), 0.0),
      P_thth(grid.size(), 0.0),
      P_rth(grid.size(), 0.0),
      P_thr(grid.size(), 0.0)
{
}

std::vector<double>& GridSolution::operator[](Field f)
{
    switch (f) {
    case Field::u_r: return u_r;
    case Field::P_rr: return P_rr;
    case Field::P_thth: return P_thth;
    case Field::P_rth: return P_rth;
    case Field::P_thr: return P_thr;
    }
    throw std::out_of_range("GridSolution: bad field");
}

const std::vector<double>& GridSolution::operator[](Field f) const
{
    return const_cast<GridSolution&>(*this)[f];
}

}  // namespace rmm

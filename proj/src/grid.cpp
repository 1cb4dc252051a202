#include "tcm/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcm {

double Grid::two_pi() { return 8.0 * std::atan(1.0); }

Grid::Grid(int n1, int n2, int n3, double l1, double l2, double l3)
    : n_{n1, n2, n3}, l_{l1, l2, l3} {
    for (int axis = 0; axis < 3; ++axis) {
        if (n_[axis] < 4 || n_[axis] % 2 != 0)
            throw std::invalid_argument(
                "Grid: points per axis must be even and >= 4, got " +
                std::to_string(n_[axis]));
        if (!(l_[axis] > 0.0) || !std::isfinite(l_[axis]))
            throw std::invalid_argument("Grid: box length must be positive");
        k_[axis].resize(n_[axis]);
        const double base = two_pi() / l_[axis];
        for (int i = 0; i < n_[axis]; ++i)
            k_[axis][i] = base * signed_index(i, n_[axis]);
    }
}

GridPtr make_grid(int n1, int n2, int n3, double l1, double l2, double l3) {
    return std::make_shared<const Grid>(n1, n2, n3, l1, l2, l3);
}

} // namespace tcm

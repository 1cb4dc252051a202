#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace tcm {

/// Uniform periodic box [0,l1) x [0,l2) x [0,l3) sampled on n1 x n2 x n3
/// points, with per-axis wavenumber tables k_j(m) = 2*pi*m/l_j over the
/// signed index range. Linear storage is x1-fastest:
/// idx = i1 + n1*(i2 + n2*i3).
class Grid {
  public:
    Grid(int n1, int n2, int n3, double l1 = two_pi(), double l2 = two_pi(),
         double l3 = two_pi());

    static double two_pi();

    int n1() const { return n_[0]; }
    int n2() const { return n_[1]; }
    int n3() const { return n_[2]; }
    int n(int axis) const { return n_[axis]; }
    double l1() const { return l_[0]; }
    double l2() const { return l_[1]; }
    double l3() const { return l_[2]; }
    double l(int axis) const { return l_[axis]; }

    std::size_t size() const {
        return static_cast<std::size_t>(n_[0]) * n_[1] * n_[2];
    }
    double volume() const { return l_[0] * l_[1] * l_[2]; }
    double cell_volume() const { return volume() / static_cast<double>(size()); }
    double spacing(int axis) const { return l_[axis] / n_[axis]; }

    std::size_t idx(int i1, int i2, int i3) const {
        return static_cast<std::size_t>(i1) +
               static_cast<std::size_t>(n_[0]) *
                   (static_cast<std::size_t>(i2) +
                    static_cast<std::size_t>(n_[1]) * i3);
    }

    /// Signed mode index of storage index i on an axis with n points:
    /// 0,1,...,n/2-1,-n/2,...,-1. The single Nyquist entry is -n/2.
    static int signed_index(int i, int n) { return i < n / 2 ? i : i - n; }
    int mode(int axis, int i) const { return signed_index(i, n_[axis]); }
    bool is_nyquist(int axis, int i) const { return i == n_[axis] / 2; }

    /// Wavenumber table value 2*pi*m/l (Nyquist carries -n/2).
    double k(int axis, int i) const { return k_[axis][i]; }
    /// Wavenumber used by the derivative symbol i*k: identical to k()
    /// except the Nyquist entry is zero, keeping derivatives of real
    /// fields real.
    double k_deriv(int axis, int i) const {
        return is_nyquist(axis, i) ? 0.0 : k_[axis][i];
    }
    const std::vector<double>& wavenumbers(int axis) const { return k_[axis]; }

    /// Grid point coordinate along an axis.
    double x(int axis, int i) const { return spacing(axis) * i; }

    bool same_layout(const Grid& other) const {
        return n_ == other.n_ && l_ == other.l_;
    }

  private:
    std::array<int, 3> n_;
    std::array<double, 3> l_;
    std::array<std::vector<double>, 3> k_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int n1, int n2, int n3, double l1 = Grid::two_pi(),
                  double l2 = Grid::two_pi(), double l3 = Grid::two_pi());

} // namespace tcm

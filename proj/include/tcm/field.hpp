#pragma once

#include <array>
#include <complex>
#include <vector>

#include "tcm/grid.hpp"

namespace tcm {

enum class Rep { physical, spectral };

/// Scalar field on a Grid in one of two representations: real point values
/// (physical) or complex Fourier coefficients with Hermitian symmetry
/// (spectral). Exactly one of the two buffers is populated at a time.
class Field {
  public:
    Field() = default;
    explicit Field(GridPtr grid, Rep rep = Rep::physical);

    Rep rep() const { return rep_; }
    const Grid& grid() const;
    const GridPtr& grid_ptr() const { return grid_; }

    std::vector<double>& phys() {
        if (rep_ != Rep::physical)
            representation_error("Field::phys", Rep::physical);
        return phys_;
    }
    const std::vector<double>& phys() const {
        if (rep_ != Rep::physical)
            representation_error("Field::phys", Rep::physical);
        return phys_;
    }
    std::vector<std::complex<double>>& spec() {
        if (rep_ != Rep::spectral)
            representation_error("Field::spec", Rep::spectral);
        return spec_;
    }
    const std::vector<std::complex<double>>& spec() const {
        if (rep_ != Rep::spectral)
            representation_error("Field::spec", Rep::spectral);
        return spec_;
    }

    bool empty() const { return grid_ == nullptr; }
    void require_rep(Rep expected, const char* what) const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

  private:
    [[noreturn]] void representation_error(const char* what, Rep expected) const;

    GridPtr grid_;
    Rep rep_ = Rep::physical;
    std::vector<double> phys_;
    std::vector<std::complex<double>> spec_;
};

/// Three scalar components sharing one grid and representation,
/// indexed 0..2 for the x1/x2/x3 directions.
class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(GridPtr grid, Rep rep = Rep::physical);

    Field& operator[](int c) { return comp_[c]; }
    const Field& operator[](int c) const { return comp_[c]; }

    Rep rep() const;
    const Grid& grid() const;
    const GridPtr& grid_ptr() const;
    bool empty() const { return comp_[0].empty(); }
    void require_rep(Rep expected, const char* what) const;

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double s);

  private:
    std::array<Field, 3> comp_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* what);

} // namespace tcm

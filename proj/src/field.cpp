#include "tcm/field.hpp"

#include <stdexcept>

#ifdef __GLIBC__
#include <malloc.h>
#endif

namespace tcm {

namespace {

// Field buffers are large enough that glibc would serve them with mmap and
// return them to the kernel on free; with temporaries churning every
// operation that means page faults per op. Keep them heap-resident.
[[maybe_unused]] const bool g_heap_tuned = [] {
#ifdef __GLIBC__
    mallopt(M_MMAP_THRESHOLD, 256 * 1024 * 1024);
    mallopt(M_TRIM_THRESHOLD, 256 * 1024 * 1024);
#endif
    return true;
}();

} // namespace

Field::Field(GridPtr grid, Rep rep) : grid_(std::move(grid)), rep_(rep) {
    if (!grid_)
        throw std::invalid_argument("Field: null grid");
    if (rep_ == Rep::physical)
        phys_.assign(grid_->size(), 0.0);
    else
        spec_.assign(grid_->size(), {0.0, 0.0});
}

const Grid& Field::grid() const {
    if (!grid_)
        throw std::logic_error("Field: empty field has no grid");
    return *grid_;
}

void Field::require_rep(Rep expected, const char* what) const {
    if (rep_ != expected)
        throw std::invalid_argument(
            std::string(what) + ": field is in the " +
            (rep_ == Rep::physical ? "physical" : "spectral") +
            " representation, expected " +
            (expected == Rep::physical ? "physical" : "spectral"));
}

void Field::representation_error(const char* what, Rep expected) const {
    require_rep(expected, what);
    throw std::logic_error("unreachable");
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(grid(), other.grid(), "Field::operator+=");
    if (rep_ != other.rep_)
        throw std::invalid_argument("Field::operator+=: representation mismatch");
    if (rep_ == Rep::physical)
        for (std::size_t i = 0; i < phys_.size(); ++i)
            phys_[i] += other.phys_[i];
    else
        for (std::size_t i = 0; i < spec_.size(); ++i)
            spec_[i] += other.spec_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(grid(), other.grid(), "Field::operator-=");
    if (rep_ != other.rep_)
        throw std::invalid_argument("Field::operator-=: representation mismatch");
    if (rep_ == Rep::physical)
        for (std::size_t i = 0; i < phys_.size(); ++i)
            phys_[i] -= other.phys_[i];
    else
        for (std::size_t i = 0; i < spec_.size(); ++i)
            spec_[i] -= other.spec_[i];
    return *this;
}

Field& Field::operator*=(double s) {
    if (rep_ == Rep::physical)
        for (double& v : phys_)
            v *= s;
    else
        for (auto& c : spec_)
            c *= s;
    return *this;
}

VectorField::VectorField(GridPtr grid, Rep rep)
    : comp_{Field(grid, rep), Field(grid, rep), Field(std::move(grid), rep)} {}

Rep VectorField::rep() const { return comp_[0].rep(); }

const Grid& VectorField::grid() const { return comp_[0].grid(); }

const GridPtr& VectorField::grid_ptr() const { return comp_[0].grid_ptr(); }

void VectorField::require_rep(Rep expected, const char* what) const {
    for (const Field& f : comp_)
        f.require_rep(expected, what);
}

VectorField& VectorField::operator+=(const VectorField& other) {
    for (int c = 0; c < 3; ++c)
        comp_[c] += other.comp_[c];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    for (int c = 0; c < 3; ++c)
        comp_[c] -= other.comp_[c];
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (Field& f : comp_)
        f *= s;
    return *this;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!a.same_layout(b))
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

} // namespace tcm

#include "zk/field.hpp"

#include <algorithm>
#include <cmath>

#include "zk/error.hpp"

namespace zk {

namespace {

template <class V>
bool all_finite(const V& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

template <class V>
double max_abs_of(const V& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void require_same(const StripGrid& a, const StripGrid& b) {
    if (!(a == b)) throw InvalidDimension("fields live on different grids");
}

}  // namespace

GridField GridField::sample(const StripGrid& grid, const std::function<double(double, double)>& f) {
    GridField out(grid);
    for (int i = 0; i < grid.Nx; ++i)
        for (int m = 0; m < grid.Ny; ++m) out(i, m) = f(grid.x(i), grid.y(m));
    return out;
}

bool GridField::is_finite() const { return all_finite(values_); }
double GridField::max_abs() const { return max_abs_of(values_); }

GridField& GridField::operator+=(const GridField& other) {
    require_same(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

GridField& GridField::operator-=(const GridField& other) {
    require_same(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

GridField& GridField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(double s, GridField a) { return a *= s; }

bool ModeField::is_finite() const { return all_finite(coeffs_); }
double ModeField::max_abs() const { return max_abs_of(coeffs_); }

ModeField& ModeField::operator+=(const ModeField& other) {
    require_same(grid_, other.grid_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

ModeField& ModeField::operator-=(const ModeField& other) {
    require_same(grid_, other.grid_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

ModeField& ModeField::operator*=(double s) {
    for (double& v : coeffs_) v *= s;
    return *this;
}

ModeField operator-(ModeField a, const ModeField& b) { return a -= b; }

}  // namespace zk

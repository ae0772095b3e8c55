#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "zk/grid.hpp"

namespace zk {

/// Samples u(x_i, y_m) on the interior nodes, stored x-major: value (i, m) at i*Ny + m.
class GridField {
public:
    GridField() = default;
    explicit GridField(const StripGrid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

    static GridField sample(const StripGrid& grid, const std::function<double(double, double)>& f);

    const StripGrid& grid() const { return grid_; }

    double& operator()(int i, int m) { return values_[static_cast<std::size_t>(i) * grid_.Ny + m]; }
    double operator()(int i, int m) const { return values_[static_cast<std::size_t>(i) * grid_.Ny + m]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::span<const double> row(int i) const { return std::span<const double>(values_).subspan(static_cast<std::size_t>(i) * grid_.Ny, grid_.Ny); }

    bool is_finite() const;
    double max_abs() const;

    GridField& operator+=(const GridField& other);
    GridField& operator-=(const GridField& other);
    GridField& operator*=(double s);

private:
    StripGrid grid_;
    std::vector<double> values_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(double s, GridField a);

/// Galerkin coefficients g_j(x_i), j = 1..N with N = grid.Ny, stored mode-major.
class ModeField {
public:
    ModeField() = default;
    explicit ModeField(const StripGrid& grid) : grid_(grid), coeffs_(grid.size(), 0.0) {}

    const StripGrid& grid() const { return grid_; }
    int modes() const { return grid_.Ny; }

    // j is the 1-based mode index.
    double& operator()(int j, int i) { return coeffs_[static_cast<std::size_t>(j - 1) * grid_.Nx + i]; }
    double operator()(int j, int i) const { return coeffs_[static_cast<std::size_t>(j - 1) * grid_.Nx + i]; }

    std::span<double> mode(int j) { return std::span<double>(coeffs_).subspan(static_cast<std::size_t>(j - 1) * grid_.Nx, grid_.Nx); }
    std::span<const double> mode(int j) const { return std::span<const double>(coeffs_).subspan(static_cast<std::size_t>(j - 1) * grid_.Nx, grid_.Nx); }

    std::span<double> values() { return coeffs_; }
    std::span<const double> values() const { return coeffs_; }

    bool is_finite() const;
    double max_abs() const;

    ModeField& operator+=(const ModeField& other);
    ModeField& operator-=(const ModeField& other);
    ModeField& operator*=(double s);

    friend bool operator==(const ModeField&, const ModeField&) = default;

private:
    StripGrid grid_;
    std::vector<double> coeffs_;
};

ModeField operator-(ModeField a, const ModeField& b);

}  // namespace zk

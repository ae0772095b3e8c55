#pragma once

#include <vector>

namespace zk {

/// Truncated half-strip (0, L) x (0, B) with uniform interior nodes.
///
/// Boundary values are not stored: the field vanishes on x = 0, x = L,
/// y = 0 and y = B. Node i sits at x = (i+1) dx, node m at y = (m+1) dy.
struct StripGrid {
    double B = 0.0;
    double L = 0.0;
    int Nx = 0;
    int Ny = 0;
    double dx = 0.0;
    double dy = 0.0;

    double x(int i) const { return (i + 1) * dx; }
    double y(int m) const { return (m + 1) * dy; }
    int modes() const { return Ny; }
    std::size_t size() const { return static_cast<std::size_t>(Nx) * static_cast<std::size_t>(Ny); }

    friend bool operator==(const StripGrid&, const StripGrid&) = default;
};

StripGrid build_grid(double B, double L, int Nx, int Ny);

struct WeightSpec {
    enum class Kind { unit, poly1, poly2, exp };

    Kind kind = Kind::unit;
    double k = 0.0;

    static WeightSpec unit() { return {Kind::unit, 0.0}; }
    static WeightSpec poly1() { return {Kind::poly1, 0.0}; }
    static WeightSpec poly2() { return {Kind::poly2, 0.0}; }
    static WeightSpec exponential(double k) { return {Kind::exp, k}; }

    double operator()(double x) const;
};

// Throws InvalidArgument for k <= 0 and WeightOverflow when k*L > 700.
void validate_weight(const StripGrid& grid, const WeightSpec& w);

/// w(x_i) for every interior x-node.
std::vector<double> weight_table(const StripGrid& grid, const WeightSpec& w);

}  // namespace zk

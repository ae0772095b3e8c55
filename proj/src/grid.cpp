#include "zk/grid.hpp"

#include <cmath>
#include <string>

#include "zk/error.hpp"

namespace zk {

StripGrid build_grid(double B, double L, int Nx, int Ny) {
    if (!(B > 0.0) || !std::isfinite(B)) throw InvalidDimension("strip width B must be positive, got " + std::to_string(B));
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidDimension("truncation length L must be positive, got " + std::to_string(L));
    if (Nx < 8) throw InvalidDimension("Nx must be at least 8, got " + std::to_string(Nx));
    if (Ny < 2) throw InvalidDimension("Ny must be at least 2, got " + std::to_string(Ny));

    StripGrid g;
    g.B = B;
    g.L = L;
    g.Nx = Nx;
    g.Ny = Ny;
    g.dx = L / (Nx + 1);
    g.dy = B / (Ny + 1);
    return g;
}

double WeightSpec::operator()(double x) const {
    switch (kind) {
        case Kind::unit: return 1.0;
        case Kind::poly1: return 1.0 + x;
        case Kind::poly2: return (1.0 + x) * (1.0 + x);
        case Kind::exp: return std::exp(k * x);
    }
    return 1.0;
}

void validate_weight(const StripGrid& grid, const WeightSpec& w) {
    if (w.kind != WeightSpec::Kind::exp) return;
    if (!(w.k > 0.0)) throw InvalidArgument("exponential weight needs k > 0, got " + std::to_string(w.k));
    if (w.k * grid.L > 700.0) throw WeightOverflow("exponential weight overflows: k*L = " + std::to_string(w.k * grid.L) + " > 700");
}

std::vector<double> weight_table(const StripGrid& grid, const WeightSpec& w) {
    validate_weight(grid, w);
    std::vector<double> table(grid.Nx);
    for (int i = 0; i < grid.Nx; ++i) table[i] = w(grid.x(i));
    return table;
}

}  // namespace zk

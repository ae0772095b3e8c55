#include "zk/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "zk/error.hpp"
#include "zk/kernels.hpp"

namespace zk {

double Eigenpair::operator()(double y) const {
    return std::sqrt(2.0 / B) * std::sin(j * std::numbers::pi * y / B);
}

double Eigenpair::derivative(double y) const {
    return std::sqrt(2.0 / B) * (j * std::numbers::pi / B) * std::cos(j * std::numbers::pi * y / B);
}

Eigenpair eigenpair(int j, double B) {
    if (j < 1) throw InvalidArgument("mode index must be >= 1, got " + std::to_string(j));
    if (!(B > 0.0)) throw InvalidDimension("strip width must be positive");
    const double r = j * std::numbers::pi / B;
    return {j, B, r * r};
}

SineBasis::SineBasis(const StripGrid& grid)
    : grid_(grid), sin_table_(static_cast<std::size_t>(grid.Ny) * grid.Ny), dcos_table_(sin_table_.size()) {
    const int n = grid.Ny;
    const int period = 2 * (n + 1);
    const double norm = std::sqrt(2.0 / grid.B);
    for (int j = 1; j <= n; ++j) {
        const double kj = j * std::numbers::pi / grid.B;
        for (int m = 0; m < n; ++m) {
            // reduce j(m+1) modulo the period before scaling to keep the argument small
            const int p = (j * (m + 1)) % period;
            const double arg = std::numbers::pi * p / (n + 1);
            sin_table_[(j - 1) * n + m] = norm * std::sin(arg);
            dcos_table_[(j - 1) * n + m] = norm * kj * std::cos(arg);
        }
    }
}

void SineBasis::analyze_into(const GridField& f, ModeField& out) const {
    kernels::sine_analysis(sin_table_, grid_.Nx, grid_.Ny, grid_.dy, f.values(), out.values());
}

void SineBasis::synthesize_into(const ModeField& m, GridField& out) const {
    kernels::sine_synthesis(sin_table_, grid_.Nx, grid_.Ny, m.values(), out.values());
}

ModeField SineBasis::analyze(const GridField& f) const {
    ModeField out(grid_);
    analyze_into(f, out);
    return out;
}

GridField SineBasis::synthesize(const ModeField& m) const {
    GridField out(grid_);
    synthesize_into(m, out);
    return out;
}

GridField SineBasis::synthesize_dy(const ModeField& m) const {
    GridField out(grid_);
    kernels::sine_synthesis(dcos_table_, grid_.Nx, grid_.Ny, m.values(), out.values());
    return out;
}

ModeField to_modes(const GridField& f) { return SineBasis(f.grid()).analyze(f); }

GridField to_physical(const ModeField& m) { return SineBasis(m.grid()).synthesize(m); }

}  // namespace zk

#include "zk/dynamics.hpp"

#include <cmath>
#include <string>

#include "zk/error.hpp"
#include "zk/kernels.hpp"

namespace zk {

BandedMatrix third_derivative_matrix(const StripGrid& grid) {
    const int n = grid.Nx;
    const double h3 = grid.dx * grid.dx * grid.dx;
    BandedMatrix d3(n, LinearModeOperator::lower_bandwidth, LinearModeOperator::upper_bandwidth);

    // x = dx: one-sided, exact on cubics through u(0) = 0
    d3.at(0, 0) = 5.0 / h3;
    d3.at(0, 1) = -6.0 / h3;
    d3.at(0, 2) = 3.0 / h3;
    d3.at(0, 3) = -0.5 / h3;

    constexpr int offsets[] = {-2, -1, 1, 2};
    constexpr double weights[] = {-0.5, 1.0, -1.0, 0.5};
    for (int i = 1; i < n; ++i) {
        for (int s = 0; s < 4; ++s) {
            int k = i + offsets[s];
            if (k < 0 || k == n) continue;  // u(0) = u(L) = 0
            if (k == n + 1) k = n - 1;      // u_x(L) = 0: u(L+dx) = u(L-dx)
            d3.at(i, k) += weights[s] / h3;
        }
    }
    return d3;
}

BandedMatrix first_derivative_matrix(const StripGrid& grid) {
    const int n = grid.Nx;
    BandedMatrix d1(n, LinearModeOperator::lower_bandwidth, LinearModeOperator::upper_bandwidth);
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) d1.at(i, i + 1) = 0.5 / grid.dx;
        if (i > 0) d1.at(i, i - 1) = -0.5 / grid.dx;
    }
    return d1;
}

LinearModeOperator linear_operator(int j, const StripGrid& grid, double lambda) {
    if (j < 1 || j > grid.Ny) throw InvalidArgument("mode index " + std::to_string(j) + " outside 1.." + std::to_string(grid.Ny));
    LinearModeOperator op;
    op.j = j;
    op.lambda = lambda;
    op.matrix = third_derivative_matrix(grid);
    const BandedMatrix d1 = first_derivative_matrix(grid);
    for (int i = 0; i < grid.Nx; ++i) {
        if (i + 1 < grid.Nx) op.matrix.at(i, i + 1) -= lambda * d1(i, i + 1);
        if (i > 0) op.matrix.at(i, i - 1) -= lambda * d1(i, i - 1);
    }
    return op;
}

LinearModeOperator linear_operator(int j, const StripGrid& grid) {
    return linear_operator(j, grid, eigenpair(j, grid.B).lambda);
}

GridField nonlinear_rhs(const GridField& f) {
    GridField out(f.grid());
    kernels::cubic_flux_dx(f.grid().Nx, f.grid().Ny, f.grid().dx, f.values(), out.values());
    return out;
}

ImexIntegrator::ImexIntegrator(const StripGrid& grid, double dt, ImexOptions options)
    : grid_(grid), dt_(dt), options_(options), basis_(grid) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive, got " + std::to_string(dt));
    ops_.reserve(grid.Ny);
    explicit_.reserve(grid.Ny);
    implicit_.reserve(grid.Ny);
    for (int j = 1; j <= grid.Ny; ++j) {
        const double lambda = options_.lambda_coupling ? eigenpair(j, grid.B).lambda : 0.0;
        ops_.push_back(linear_operator(j, grid, lambda));
        explicit_.push_back(ops_.back().matrix.shifted(1.0, -0.5 * dt));
        implicit_.emplace_back(ops_.back().matrix.shifted(1.0, 0.5 * dt));
    }
}

SolverState ImexIntegrator::initial_state(const GridField& u0) const {
    if (!(u0.grid() == grid_)) throw InvalidDimension("initial data grid does not match integrator grid");
    return initial_state(basis_.analyze(u0));
}

SolverState ImexIntegrator::initial_state(const ModeField& g0) const {
    if (!(g0.grid() == grid_)) throw InvalidDimension("initial modes grid does not match integrator grid");
    if (!g0.is_finite()) throw InvalidArgument("initial modes contain non-finite values");
    SolverState s;
    s.t = 0.0;
    s.dt = dt_;
    s.modes = g0;
    return s;
}

ModeField ImexIntegrator::nonlinear_modes(const ModeField& modes) const {
    const int nx = grid_.Nx;
    const int ny = grid_.Ny;
    GridField phys(grid_);
    GridField flux(grid_);
    ModeField out(grid_);
    if (options_.parallel) {
        kernels::sine_synthesis(basis_.table(), nx, ny, modes.values(), phys.values());
        kernels::cubic_flux_dx(nx, ny, grid_.dx, phys.values(), flux.values());
        kernels::sine_analysis(basis_.table(), nx, ny, grid_.dy, flux.values(), out.values());
    } else {
        kernels::reference::sine_synthesis(basis_.table(), nx, ny, modes.values(), phys.values());
        kernels::reference::cubic_flux_dx(nx, ny, grid_.dx, phys.values(), flux.values());
        kernels::reference::sine_analysis(basis_.table(), nx, ny, grid_.dy, flux.values(), out.values());
    }
    return out;
}

SolverState ImexIntegrator::step(const SolverState& s) const {
    if (!(s.modes.grid() == grid_)) throw InvalidDimension("state grid does not match integrator grid");
    if (s.dt != dt_) throw InvalidArgument("state dt differs from integrator dt");

    SolverState next;
    next.dt = dt_;
    next.step = s.step + 1;
    next.t = s.t + dt_;
    next.modes = ModeField(grid_);

    std::optional<ModeField> nl;
    if (options_.nonlinear) nl = nonlinear_modes(s.modes);

    const int nmodes = grid_.Ny;
    const int nx = grid_.Nx;
    auto advance_mode = [&](int j) {
        std::span<double> out = next.modes.mode(j);
        explicit_[j - 1].apply(s.modes.mode(j), out);
        if (nl) {
            std::span<const double> cur = nl->mode(j);
            if (s.prev_nonlinear) {
                std::span<const double> prev = s.prev_nonlinear->mode(j);
                for (int i = 0; i < nx; ++i) out[i] -= dt_ * (1.5 * cur[i] - 0.5 * prev[i]);
            } else {
                for (int i = 0; i < nx; ++i) out[i] -= dt_ * cur[i];
            }
        }
        implicit_[j - 1].solve(out);
    };

    if (options_.parallel) {
#pragma omp parallel for schedule(static)
        for (int j = 1; j <= nmodes; ++j) advance_mode(j);
    } else {
        for (int j = 1; j <= nmodes; ++j) advance_mode(j);
    }

    next.prev_nonlinear = std::move(nl);

    double worst = 0.0;
    for (double v : next.modes.values()) {
        if (!std::isfinite(v)) throw BlowUp(next.t, v);
        worst = std::max(worst, std::abs(v));
    }
    if (worst > options_.blowup_threshold) throw BlowUp(next.t, worst);
    return next;
}

long steps_for(double duration, double dt) {
    if (!(duration >= 0.0)) throw InvalidArgument("duration must be non-negative");
    const double r = duration / dt;
    const double nearest = std::round(r);
    if (std::abs(r - nearest) <= 1e-9 * std::max(1.0, r)) return static_cast<long>(nearest);
    return static_cast<long>(std::ceil(r));
}

SolverState ImexIntegrator::evolve(SolverState s, double duration, int stride, const Observer& observer) const {
    if (stride < 1) throw InvalidArgument("observer stride must be >= 1");
    const long n = steps_for(duration, dt_);
    if (observer) observer(s.t, s.modes);
    for (long k = 1; k <= n; ++k) {
        s = step(s);
        if (observer && k % stride == 0) observer(s.t, s.modes);
    }
    return s;
}

double cfl_suggest(const StripGrid& grid, double umax) {
    if (!(umax >= 0.0)) throw InvalidArgument("umax must be non-negative");
    constexpr double c_safe = 0.25;
    constexpr double eps = 1e-6;
    return c_safe * grid.dx / std::max(umax * umax, eps);
}

}  // namespace zk

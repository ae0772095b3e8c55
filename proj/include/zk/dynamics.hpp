#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "zk/banded.hpp"
#include "zk/field.hpp"
#include "zk/grid.hpp"
#include "zk/spectral.hpp"

namespace zk {

/// Modal linear operator A_j = D3 - lambda_j D1 acting on interior x-samples.
///
/// D3 uses the centred five-point stencil; the node next to x = 0 uses a
/// second-order one-sided stencil built on u(0) = 0, and the ghost beyond
/// x = L is eliminated through u(L) = 0, u_x(L) = 0. D1 is the centred
/// difference with zero Dirichlet data. The mode equation reads
/// g_t + A_j g + NL_j = 0.
struct LinearModeOperator {
    int j = 1;
    double lambda = 0.0;
    BandedMatrix matrix;

    static constexpr int lower_bandwidth = 2;
    static constexpr int upper_bandwidth = 3;
};

BandedMatrix third_derivative_matrix(const StripGrid& grid);
BandedMatrix first_derivative_matrix(const StripGrid& grid);

LinearModeOperator linear_operator(int j, const StripGrid& grid);
// Same stencil with an explicit lambda (lambda = 0 isolates D3).
LinearModeOperator linear_operator(int j, const StripGrid& grid, double lambda);

/// (1/3) d/dx (u^3) on the grid: pointwise cube, then centred difference in x.
GridField nonlinear_rhs(const GridField& f);

struct SolverState {
    double t = 0.0;
    double dt = 0.0;
    long step = 0;
    ModeField modes;
    // Transformed nonlinear term of the previous step; empty before the first step.
    std::optional<ModeField> prev_nonlinear;
};

struct ImexOptions {
    bool nonlinear = true;
    // When false the -lambda_j d/dx term is dropped from every mode.
    bool lambda_coupling = true;
    // OpenMP kernels when true, serial reference kernels otherwise.
    bool parallel = true;
    double blowup_threshold = 1e6;
};

/// Crank-Nicolson for the per-mode linear part, second-order Adams-Bashforth
/// for the nonlinear coupling (explicit Euler on the very first step).
class ImexIntegrator {
public:
    using Observer = std::function<void(double t, const ModeField& modes)>;

    ImexIntegrator(const StripGrid& grid, double dt, ImexOptions options = {});

    const StripGrid& grid() const { return grid_; }
    double dt() const { return dt_; }
    const ImexOptions& options() const { return options_; }
    const SineBasis& basis() const { return basis_; }
    const LinearModeOperator& mode_operator(int j) const { return ops_.at(j - 1); }

    SolverState initial_state(const GridField& u0) const;
    SolverState initial_state(const ModeField& g0) const;

    SolverState step(const SolverState& s) const;

    /// Advances by `duration` (a whole number of steps, rounding up). The
    /// observer sees the entry state and every `stride`-th state after it.
    SolverState evolve(SolverState s, double duration, int stride = 1, const Observer& observer = {}) const;

    // Sine transform of (1/3)(u^3)_x for the field represented by `modes`.
    ModeField nonlinear_modes(const ModeField& modes) const;

private:
    StripGrid grid_;
    double dt_;
    ImexOptions options_;
    SineBasis basis_;
    std::vector<LinearModeOperator> ops_;
    std::vector<BandedMatrix> explicit_;  // I - dt/2 A_j
    std::vector<BandedLU> implicit_;      // I + dt/2 A_j, factored
};

/// Step count used by ImexIntegrator::evolve for a given duration.
long steps_for(double duration, double dt);

/// Advisory transport bound: 0.25 dx / max(umax^2, 1e-6).
double cfl_suggest(const StripGrid& grid, double umax);

}  // namespace zk

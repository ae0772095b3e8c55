#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zk/dynamics.hpp"
#include "zk/field.hpp"
#include "zk/functionals.hpp"
#include "zk/grid.hpp"

namespace zk {

/// Initial data u0 = a X(x) Y(y).
///
/// X(x) = exp(-(x-x0)^2/w^2) - exp(-x0^2/w^2) exp(-x^2/w^2), so X(0) = 0.
/// family "gauss_mode": Y = sin(j pi y / B).
/// family "gauss_bump": Y = exp(-((y - yc B)/(yw B))^2) sin(pi y / B).
struct InitialData {
    std::string family = "gauss_mode";
    double amplitude = 0.01;
    // When set, the sampled field is rescaled so that ||u0|| equals this value.
    std::optional<double> l2_norm;
    double center = 3.0;
    double width = 1.0;
    int mode = 1;
    double y_center = 0.5;
    double y_width = 0.15;
};

struct ExperimentConfig {
    double B = 3.14159265358979323846;
    std::optional<double> L;  // default 10 B
    int Nx = 1024;
    int Ny = 32;
    InitialData data;
    std::optional<double> dt;  // default cfl_suggest(grid, max(sup|u0|, 1))
    std::optional<double> T;   // default 10 / theoretical_rate
    double k = 0.2;
    int stride = 10;
    bool nonlinear = true;
    std::optional<double> Cs2;  // default: estimated from a preliminary run
    double cs_window = 5.0;
    int threads = 0;
    std::vector<int> modes;  // mode counts for Galerkin convergence

    StripGrid grid() const;
};

GridField make_initial_data(const StripGrid& grid, const InitialData& data);

/// k pi^2 / (2 B^2)
double theoretical_rate(double k, double B);

double resolved_dt(const ExperimentConfig& cfg, const GridField& u0);
double resolved_T(const ExperimentConfig& cfg);

/// Fills every optional field of the config with the value a run would use.
ExperimentConfig resolve(const ExperimentConfig& cfg);

struct Trajectory {
    std::vector<EnergyReport> reports;
    SolverState final_state;
};

/// Evolves u0 for `duration`, recording an EnergyReport every `stride` steps.
Trajectory run_trajectory(const ImexIntegrator& integrator, const GridField& u0, double duration, int stride, double k);

struct DecayFit {
    std::vector<std::pair<double, double>> series;
    double fitted_rate = 0.0;
    double r_squared = 0.0;
    double theoretical_rate = 0.0;
    std::size_t window = 0;  // number of points used by the fit
};

/// Least-squares slope of log(value) against t over the points above
/// 1e-12 * value(0); fitted_rate = -slope.
DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& series, double theoretical_rate = 0.0);

struct DecayExperiment {
    ConditionReport smallness;
    ConditionReport decay;
    double Cs2 = 0.0;
    DecayFit exp_weighted;  // (e^{kx}, u^2)(t)
    DecayFit h2;            // ||u||_{H2}^2(t)
    std::vector<EnergyReport> reports;
    // max over consecutive snapshots of [((1+x),u^2)(t_{n+1}) - ((1+x),u^2)(t_n)] / ((1+x),u0^2)
    double w1_max_increase = 0.0;
    bool rate_ok = false;  // exp-weighted fitted rate >= 0.9 * theoretical
};

/// Max over a run of 2 (||u||_{H1}^2 + ||u_xy||^2).
double estimate_cs2(const ImexIntegrator& integrator, const GridField& u0, double duration, int stride);

DecayExperiment run_decay_experiment(const ExperimentConfig& cfg);

/// max_t | ||u||^2(t) + int_0^t flux - ||u0||^2 | / ||u0||^2, flux integrated by the trapezoid rule.
double l2_balance_residual(std::span<const EnergyReport> reports);

/// ||u^{N_{i+1}} - u^{N_i}||(T) for consecutive mode counts.
std::vector<double> galerkin_convergence(const ExperimentConfig& cfg, std::span<const int> mode_counts);

struct DependenceResult {
    double factor = 0.0;           // sup_t ||u1 - u2|| / delta
    double weighted_factor = 0.0;  // sup_t sqrt(((1+x), z^2)(t) / ((1+x), z^2)(0))
    double gronwall_c = 0.0;       // (1/3) sup |M - (1+x) M_x|, M = u1^2 + u1 u2 + u2^2
    double duration = 0.0;
    bool identical = false;        // bitwise-identical trajectories
};

/// Unit-norm perturbation used by continuous_dependence.
GridField perturbation_shape(const StripGrid& grid, const InitialData& data);

DependenceResult continuous_dependence(const ExperimentConfig& cfg, double delta);

/// Relative L2 error of the IMEX evolution (nonlinearity off) of a single
/// mode profile against exp(-T A_j) applied densely. Requires Nx <= 64.
double linear_oracle_compare(int j, const StripGrid& grid, double T, double dt, std::span<const double> profile,
                             bool lambda_coupling = true);

/// Smooth random field vanishing on the strip boundary.
GridField random_smooth_field(const StripGrid& grid, std::mt19937_64& rng);

struct InequalitySummary {
    int trials = 0;
    double worst_steklov = 0.0;  // min over fields of ratio - pi^2/B^2
    double worst_l4 = 0.0;       // min of margin / rhs
    double worst_l8 = 0.0;
    double worst_sup = 0.0;      // min of bound - sup2
    int failures = 0;
    bool pass() const { return failures == 0; }
};

InequalitySummary verify_inequalities(const StripGrid& grid, std::uint64_t seed, int trials);

}  // namespace zk

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "zk/dynamics.hpp"
#include "zk/experiments.hpp"
#include "zk/functionals.hpp"
#include "zk/grid.hpp"

namespace {

using namespace zk;

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Inequality suite over 1000 seeded random fields.
Outcome inequality_suite() {
    const StripGrid grid = build_grid(pi, 10.0, 256, 32);
    const auto t0 = std::chrono::steady_clock::now();
    const InequalitySummary s = verify_inequalities(grid, 20240611, 1000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = s.pass() && s.trials >= 1000 && s.worst_steklov >= -1e-10 && s.worst_l4 >= -1e-8 && s.worst_l8 >= -1e-8 &&
                    s.worst_sup >= -1e-10 && secs < 60.0;
    return {ok, fmt("trials=%d failures=%d steklov=%.3e l4=%.3e l8=%.3e sup=%.3e time=%.1fs", s.trials, s.failures, s.worst_steklov,
                    s.worst_l4, s.worst_l8, s.worst_sup, secs)};
}

ExperimentConfig balance_config() {
    ExperimentConfig cfg;
    cfg.data.family = "gauss_mode";
    cfg.data.l2_norm = 0.05;
    cfg.T = 5.0;
    cfg.stride = 1;
    return cfg;
}

double balance_residual(const ExperimentConfig& cfg) {
    const ExperimentConfig rc = resolve(cfg);
    const StripGrid grid = rc.grid();
    const ImexIntegrator integrator(grid, *rc.dt);
    const Trajectory tr = run_trajectory(integrator, make_initial_data(grid, rc.data), *rc.T, rc.stride, rc.k);
    return l2_balance_residual(tr.reports);
}

// L2 balance at default resolution and under joint halving of dx and dt.
Outcome l2_balance() {
    const ExperimentConfig coarse = resolve(balance_config());
    ExperimentConfig fine = coarse;
    fine.Nx = 2 * coarse.Nx + 1;  // dx = L/(Nx+1) halves exactly
    fine.dt = *coarse.dt / 2.0;
    const double r1 = balance_residual(coarse);
    const double r2 = balance_residual(fine);
    const double ratio = r1 / r2;
    return {r1 <= 1e-3 && ratio >= 3.5, fmt("residual=%.3e (Nx=%d) residual=%.3e (Nx=%d) ratio=%.2f", r1, coarse.Nx, r2, fine.Nx, ratio)};
}

// Crank-Nicolson against the dense matrix exponential, order in dt.
Outcome linear_oracle() {
    const StripGrid grid = build_grid(pi, 10.0, 32, 8);
    std::vector<double> profile(grid.Nx);
    for (int i = 0; i < grid.Nx; ++i) {
        const double x = grid.x(i);
        profile[i] = std::exp(-(x - 3.0) * (x - 3.0)) - std::exp(-9.0) * std::exp(-x * x);
    }
    const double dts[] = {0.01, 0.005, 0.0025};
    double err[3];
    for (int n = 0; n < 3; ++n) err[n] = linear_oracle_compare(1, grid, 0.1, dts[n], profile);
    const double p1 = std::log2(err[0] / err[1]);
    const double p2 = std::log2(err[1] / err[2]);
    const bool ok = p1 >= 1.8 && p1 <= 2.2 && p2 >= 1.8 && p2 <= 2.2;
    return {ok, fmt("errors=%.3e,%.3e,%.3e orders=%.3f,%.3f", err[0], err[1], err[2], p1, p2)};
}

DecayExperiment& decay_run() {
    static DecayExperiment d = [] {
        ExperimentConfig cfg;
        cfg.data.family = "gauss_mode";
        cfg.data.l2_norm = 0.005;
        cfg.k = 0.2;
        cfg.T = 30.0;
        return run_decay_experiment(cfg);
    }();
    return d;
}

// Exponential decay of the e^{kx}-weighted norm and the H2 norm.
Outcome decay_rate() {
    const auto t0 = std::chrono::steady_clock::now();
    const DecayExperiment& d = decay_run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double theory = theoretical_rate(0.2, pi);
    const bool ok = d.smallness.pass && d.decay.pass && std::abs(theory - 0.1) < 1e-15 && d.exp_weighted.fitted_rate >= 0.09 &&
                    d.h2.fitted_rate >= 0.09 && secs < 300.0;
    return {ok, fmt("theory=%.4f expk_rate=%.4f h2_rate=%.4f Cs2=%.3e K0=%.3e time=%.1fs", theory, d.exp_weighted.fitted_rate,
                    d.h2.fitted_rate, d.Cs2, d.smallness.K0, secs)};
}

// ((1+x), u^2)(t) nonincreasing along the decay run.
Outcome monotone_weighted() {
    const DecayExperiment& d = decay_run();
    const double w0 = d.reports.front().w1;
    double worst = 0.0;
    for (std::size_t n = 1; n < d.reports.size(); ++n) worst = std::max(worst, d.reports[n].w1 - d.reports[n - 1].w1);
    return {worst <= 1e-8 * w0, fmt("max increase=%.3e tolerance=%.3e snapshots=%zu", worst, 1e-8 * w0, d.reports.size())};
}

// Differences between Galerkin truncations at T = 1.
Outcome galerkin() {
    ExperimentConfig cfg;
    cfg.data.family = "gauss_bump";
    cfg.data.l2_norm = 0.05;
    cfg.T = 1.0;
    const int modes[] = {8, 16, 32};
    const std::vector<double> d = galerkin_convergence(cfg, modes);
    const bool ok = d.size() == 2 && d[1] < d[0] && d[1] <= 0.1 * d[0];
    return {ok, fmt("|u16-u8|=%.3e |u32-u16|=%.3e", d[0], d[1])};
}

// Linear response to small perturbations and bitwise determinism.
Outcome dependence() {
    ExperimentConfig cfg;
    cfg.data.family = "gauss_mode";
    cfg.data.l2_norm = 0.005;  // smallness gates must pass for both data
    cfg.T = 5.0;
    const DependenceResult a = continuous_dependence(cfg, 1e-6);
    const DependenceResult b = continuous_dependence(cfg, 1e-7);
    const DependenceResult z = continuous_dependence(cfg, 0.0);
    const double rel = std::abs(a.factor - b.factor) / b.factor;
    return {rel <= 0.1 && z.identical, fmt("factor(1e-6)=%.6f factor(1e-7)=%.6f rel=%.2e C=%.3e zero-perturbation identical=%s",
                                           a.factor, b.factor, rel, a.gronwall_c, z.identical ? "yes" : "no")};
}

// Closed-form gate thresholds.
Outcome gate_arithmetic() {
    bool ok = smallness_threshold(pi) == 0.125;
    const StripGrid grid = build_grid(pi, 10.0, 64, 8);
    const GridField u0 = make_initial_data(grid, InitialData{});
    ok = ok && check_smallness(u0).threshold_32 == 0.125;
    double worst = 0.0;
    for (double B : {0.5, 1.0, 2.0, pi, 5.0}) {
        const double expected = pi / (std::sqrt(20.0) * B);
        worst = std::max(worst, std::abs(decay_k_cap(B) - expected) / expected);
        const StripGrid g = build_grid(B, 10.0, 64, 8);
        const ConditionReport r = check_decay_conditions(make_initial_data(g, InitialData{}), 0.1, 0.0);
        worst = std::max(worst, std::abs(r.k_cap - expected) / expected);
    }
    ok = ok && worst <= 4 * std::numeric_limits<double>::epsilon();
    return {ok, fmt("smallness threshold(B=pi)=%.17g k-cap max rel err=%.1e", smallness_threshold(pi), worst)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"inequality suite", inequality_suite}, {"L2 balance", l2_balance},
        {"linear oracle order", linear_oracle}, {"decay rate", decay_rate},
        {"monotone weighted norm", monotone_weighted}, {"Galerkin convergence", galerkin},
        {"continuous dependence", dependence}, {"gate arithmetic", gate_arithmetic},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of 8 criteria passed\n", 8 - failed);
    return failed == 0 ? 0 : 1;
}

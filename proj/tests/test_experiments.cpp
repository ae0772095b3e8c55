#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "zk/error.hpp"
#include "zk/experiments.hpp"

using namespace zk;
constexpr double pi = std::numbers::pi;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.L = 10.0 * pi;
    cfg.Nx = 256;
    cfg.Ny = 16;
    cfg.data.l2_norm = 0.005;
    cfg.T = 5.0;
    return cfg;
}

std::vector<std::pair<double, double>> series(double (*f)(double), int n, double dt = 1.0) {
    std::vector<std::pair<double, double>> s;
    for (int k = 0; k < n; ++k) s.emplace_back(k * dt, f(k * dt));
    return s;
}

}  // namespace

TEST_CASE("initial data vanishes at x = 0 and honours l2_norm") {
    const StripGrid g = build_grid(pi, 20.0, 200, 16);
    InitialData d;
    d.center = 1.0;
    d.width = 1.0;
    d.amplitude = 2.0;
    const GridField u = make_initial_data(g, d);
    // the x-profile extended to x = 0 is exactly zero there
    const double x0 = 0.0;
    CHECK(std::exp(-(x0 - 1.0) * (x0 - 1.0)) - std::exp(-1.0) * std::exp(-x0 * x0) == 0.0);
    CHECK(std::abs(u(0, 8)) < 2.0 * 4 * g.dx);
    const double x = g.x(40), y = g.y(5);
    CHECK(u(40, 5) == doctest::Approx(2.0 * (std::exp(-(x - 1) * (x - 1)) - std::exp(-1.0) * std::exp(-x * x)) * std::sin(y)).epsilon(1e-14));

    d.l2_norm = 0.05;
    CHECK(std::sqrt(l2_squared(make_initial_data(g, d))) == doctest::Approx(0.05).epsilon(1e-12));
    d.family = "gauss_bump";
    CHECK(std::sqrt(l2_squared(make_initial_data(g, d))) == doctest::Approx(0.05).epsilon(1e-12));

    InitialData bad;
    bad.family = "nope";
    CHECK_THROWS_AS(make_initial_data(g, bad), InvalidArgument);
    bad = InitialData{};
    bad.mode = 17;
    CHECK_THROWS_AS(make_initial_data(g, bad), InvalidArgument);
    bad = InitialData{};
    bad.amplitude = 0.0;
    bad.l2_norm = 0.1;
    CHECK_THROWS_AS(make_initial_data(g, bad), InvalidArgument);
}

TEST_CASE("decay fit") {
    const DecayFit exact = fit_decay_rate(series([](double t) { return std::exp(-0.5 * t); }, 10));
    CHECK(exact.fitted_rate == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(exact.r_squared == doctest::Approx(1.0));
    CHECK(exact.window == 10u);

    CHECK(fit_decay_rate(series([](double) { return 3.0; }, 8)).fitted_rate == 0.0);

    const DecayFit noisy = fit_decay_rate(series([](double t) { return std::exp(-0.3 * t) * (1 + 0.01 * std::sin(t)); }, 200, 0.1));
    CHECK(std::abs(noisy.fitted_rate - 0.3) <= 0.01);

    CHECK_THROWS_AS(fit_decay_rate(series([](double t) { return std::exp(-t); }, 4)), DegenerateSeries);
    CHECK_THROWS_AS(fit_decay_rate({{0, 1}, {1, 0.5}, {2, 0.0}, {3, 0.1}, {4, 0.1}}), DegenerateSeries);
    CHECK_THROWS_AS(fit_decay_rate({{1, 1}, {1, 0.5}, {1, 0.2}, {1, 0.1}, {1, 0.1}}), DegenerateSeries);

    // points below 1e-12 of the initial value are dropped from the window
    auto s = series([](double t) { return std::exp(-0.5 * t); }, 10);
    s.emplace_back(10.0, 1e-14);
    const DecayFit windowed = fit_decay_rate(s);
    CHECK(windowed.window == 10u);
    CHECK(windowed.fitted_rate == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("theoretical rate") {
    CHECK(theoretical_rate(0.2, pi) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(theoretical_rate(0.5, 1.0) == doctest::Approx(2.4674).epsilon(1e-4));
}

TEST_CASE("config resolution") {
    ExperimentConfig cfg;
    cfg.Nx = 99;
    const ExperimentConfig rc = resolve(cfg);
    CHECK(*rc.L == doctest::Approx(10 * pi));
    CHECK(*rc.T == doctest::Approx(100.0));
    CHECK(*rc.dt == doctest::Approx(0.25 * rc.grid().dx));
    cfg.dt = 0.003;
    cfg.T = 2.0;
    CHECK(*resolve(cfg).dt == 0.003);
    CHECK(*resolve(cfg).T == 2.0);
}

TEST_CASE("decay experiment") {
    SUBCASE("passing data decays at least at the theoretical rate") {
        const DecayExperiment d = run_decay_experiment(small_config());
        CHECK(d.smallness.pass);
        CHECK(d.decay.pass);
        CHECK(d.exp_weighted.theoretical_rate == doctest::Approx(0.1));
        CHECK(d.rate_ok);
        CHECK(d.exp_weighted.fitted_rate >= 0.09);
        CHECK(d.w1_max_increase <= 1e-8);
        CHECK(d.reports.size() == static_cast<std::size_t>(steps_for(5.0, *resolve(small_config()).dt) / 10 + 1));
    }
    SUBCASE("failing gate names the gate") {
        ExperimentConfig cfg = small_config();
        cfg.data.l2_norm = 0.2;
        try {
            run_decay_experiment(cfg);
            FAIL("expected a precondition violation");
        } catch (const PreconditionViolation& e) {
            CHECK(e.gate().find("u0_l2") == 0);
        }
        cfg = small_config();
        cfg.k = 0.3;
        cfg.Cs2 = 0.0;
        try {
            run_decay_experiment(cfg);
            FAIL("expected a precondition violation");
        } catch (const PreconditionViolation& e) {
            CHECK(e.gate().find("k <=") == 0);
        }
    }
    SUBCASE("zero data is rejected") {
        ExperimentConfig cfg = small_config();
        cfg.data.l2_norm.reset();
        cfg.data.amplitude = 0.0;
        CHECK_THROWS_AS(run_decay_experiment(cfg), DegenerateSeries);
    }
}

TEST_CASE("L2 balance residual") {
    CHECK_THROWS_AS(l2_balance_residual(std::vector<EnergyReport>{}), InvalidArgument);
    CHECK_THROWS_AS(l2_balance_residual(std::vector<EnergyReport>{EnergyReport{}, EnergyReport{}}), InvalidArgument);

    // synthetic trajectory obeying the balance exactly for a linear flux
    std::vector<EnergyReport> r(3);
    r[0].t = 0;
    r[0].l2 = 1.0;
    r[0].flux = 0.2;
    r[1].t = 1;
    r[1].l2 = 0.8;
    r[1].flux = 0.2;
    r[2].t = 2;
    r[2].l2 = 0.5;
    r[2].flux = 0.2;
    CHECK(l2_balance_residual(r) == doctest::Approx(0.1));

    // linear run: second-order self-convergence under joint halving of dx and dt
    ExperimentConfig cfg;
    cfg.L = 20.0;
    cfg.Ny = 8;
    cfg.nonlinear = false;
    cfg.data.l2_norm = 0.05;
    cfg.data.center = 5.0;
    cfg.T = 1.0;
    cfg.stride = 1;
    double prev = 0.0;
    for (int level = 0; level < 3; ++level) {
        cfg.Nx = (128 << level) - 1;
        cfg.dt = 0.02 / (1 << level);
        const ExperimentConfig rc = resolve(cfg);
        const ImexIntegrator integ(rc.grid(), *rc.dt, ImexOptions{false});
        const Trajectory tr = run_trajectory(integ, make_initial_data(rc.grid(), rc.data), *rc.T, 1, rc.k);
        const double res = l2_balance_residual(tr.reports);
        if (level == 2) CHECK(prev / res == doctest::Approx(4.0).epsilon(0.2));
        prev = res;
    }
}

TEST_CASE("Galerkin convergence") {
    ExperimentConfig cfg = small_config();
    cfg.T = 0.5;
    SUBCASE("linear dynamics decouple the modes") {
        cfg.nonlinear = false;
        cfg.data.mode = 3;
        const int n[] = {4, 8};
        const auto d = galerkin_convergence(cfg, n);
        REQUIRE(d.size() == 1u);
        CHECK(d[0] <= 1e-14);
    }
    SUBCASE("nonlinear differences shrink") {
        cfg.data.family = "gauss_bump";
        cfg.data.l2_norm = 0.05;
        const int n[] = {8, 16, 32};
        const auto d = galerkin_convergence(cfg, n);
        REQUIRE(d.size() == 2u);
        CHECK(d[1] < d[0]);
    }
    SUBCASE("zero data") {
        cfg.data.l2_norm.reset();
        cfg.data.amplitude = 0.0;
        const int n[] = {4, 8, 16};
        for (double v : galerkin_convergence(cfg, n)) CHECK(v == 0.0);
    }
    SUBCASE("argument checks") {
        const int one[] = {8};
        const int down[] = {16, 8};
        CHECK_THROWS_AS(galerkin_convergence(cfg, one), InvalidArgument);
        CHECK_THROWS_AS(galerkin_convergence(cfg, down), InvalidArgument);
    }
}

TEST_CASE("continuous dependence") {
    ExperimentConfig cfg = small_config();
    cfg.T = 1.0;
    const DependenceResult zero = continuous_dependence(cfg, 0.0);
    CHECK(zero.identical);
    CHECK(zero.factor == 0.0);

    const DependenceResult a = continuous_dependence(cfg, 1e-6);
    const DependenceResult b = continuous_dependence(cfg, 1e-7);
    CHECK_FALSE(a.identical);
    CHECK(std::abs(a.factor - b.factor) <= 0.1 * b.factor);
    CHECK(a.factor <= std::exp(a.gronwall_c * a.duration) * (1 + 1e-12));
    CHECK(a.weighted_factor <= std::exp(a.gronwall_c * a.duration) * (1 + 1e-12));
    CHECK_THROWS_AS(continuous_dependence(cfg, -1.0), InvalidArgument);

    cfg.data.l2_norm = 0.2;
    CHECK_THROWS_AS(continuous_dependence(cfg, 1e-6), PreconditionViolation);
}

TEST_CASE("inequality verification is deterministic in the seed") {
    const StripGrid g = build_grid(pi, 10.0, 128, 16);
    const InequalitySummary a = verify_inequalities(g, 42, 50);
    const InequalitySummary b = verify_inequalities(g, 42, 50);
    CHECK(a.pass());
    CHECK(a.trials == 50);
    CHECK(a.worst_l4 == b.worst_l4);
    CHECK(a.worst_l8 == b.worst_l8);
    CHECK(a.worst_sup == b.worst_sup);
    CHECK(a.worst_steklov == b.worst_steklov);
    CHECK(verify_inequalities(g, 43, 50).worst_l4 != a.worst_l4);
    CHECK_THROWS_AS(verify_inequalities(g, 1, 0), InvalidArgument);
}

TEST_CASE("random fields vanish on the boundary") {
    // the same seed draws the same continuum field on any grid with equal Ny,
    // so values next to x = 0 and x = L shrink linearly with dx
    const StripGrid coarse = build_grid(pi, 10.0, 255, 32);
    const StripGrid fine = build_grid(pi, 10.0, 511, 32);
    auto edge = [](const GridField& f) {
        double e = 0.0;
        for (int m = 0; m < f.grid().Ny; ++m) e = std::max({e, std::abs(f(0, m)), std::abs(f(f.grid().Nx - 1, m))});
        return e;
    };
    for (unsigned seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 a(seed), b(seed);
        const GridField fc = random_smooth_field(coarse, a);
        const GridField ff = random_smooth_field(fine, b);
        CHECK(fc.is_finite());
        CHECK(fc.max_abs() > 0.0);
        CHECK(edge(ff) / edge(fc) == doctest::Approx(0.5).epsilon(0.05));
    }
}

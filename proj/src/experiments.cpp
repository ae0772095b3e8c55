#include "zk/experiments.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <functional>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "zk/error.hpp"
#include "zk/kernels.hpp"
#include "zk/spectral.hpp"

namespace zk {

namespace {

constexpr double pi = std::numbers::pi;

double taper_profile(double x, double x0, double w) {
    return std::exp(-(x - x0) * (x - x0) / (w * w)) - std::exp(-x0 * x0 / (w * w)) * std::exp(-x * x / (w * w));
}

void require_pass(const ConditionReport& r, const std::string& what) {
    if (const Gate* g = r.first_failure())
        throw PreconditionViolation(g->name, what + ": gate '" + g->name + "' failed (value " + std::to_string(g->value) +
                                                 ", threshold " + std::to_string(g->threshold) + ")");
}

}  // namespace

StripGrid ExperimentConfig::grid() const { return build_grid(B, L.value_or(10.0 * B), Nx, Ny); }

GridField make_initial_data(const StripGrid& grid, const InitialData& data) {
    if (!(data.width > 0.0)) throw InvalidArgument("initial-data width must be positive");
    if (!std::isfinite(data.amplitude)) throw InvalidArgument("initial-data amplitude must be finite");

    std::function<double(double)> ypart;
    if (data.family == "gauss_mode") {
        if (data.mode < 1 || data.mode > grid.Ny)
            throw InvalidArgument("initial-data mode " + std::to_string(data.mode) + " outside 1.." + std::to_string(grid.Ny));
        const double kj = data.mode * pi / grid.B;
        ypart = [kj](double y) { return std::sin(kj * y); };
    } else if (data.family == "gauss_bump") {
        if (!(data.y_width > 0.0)) throw InvalidArgument("y_width must be positive");
        const double yc = data.y_center * grid.B;
        const double yw = data.y_width * grid.B;
        const double B = grid.B;
        ypart = [yc, yw, B](double y) { return std::exp(-(y - yc) * (y - yc) / (yw * yw)) * std::sin(pi * y / B); };
    } else {
        throw InvalidArgument("unknown initial-data family '" + data.family + "'");
    }

    const double a = data.amplitude;
    GridField u0 = GridField::sample(grid, [&](double x, double y) { return a * taper_profile(x, data.center, data.width) * ypart(y); });

    if (data.l2_norm) {
        if (!(*data.l2_norm >= 0.0)) throw InvalidArgument("l2_norm must be non-negative");
        const double n = std::sqrt(l2_squared(u0));
        if (*data.l2_norm == 0.0) {
            u0 *= 0.0;
        } else {
            if (!(n > 0.0)) throw InvalidArgument("cannot rescale zero initial data to a positive norm");
            u0 *= *data.l2_norm / n;
        }
    }
    return u0;
}

double theoretical_rate(double k, double B) { return k * pi * pi / (2.0 * B * B); }

double resolved_dt(const ExperimentConfig& cfg, const GridField& u0) {
    if (cfg.dt) return *cfg.dt;
    return cfl_suggest(u0.grid(), std::max(u0.max_abs(), 1.0));
}

double resolved_T(const ExperimentConfig& cfg) {
    if (cfg.T) return *cfg.T;
    return 10.0 / theoretical_rate(cfg.k, cfg.B);
}

ExperimentConfig resolve(const ExperimentConfig& cfg) {
    ExperimentConfig out = cfg;
    out.L = cfg.L.value_or(10.0 * cfg.B);
    const GridField u0 = make_initial_data(out.grid(), cfg.data);
    out.dt = resolved_dt(cfg, u0);
    out.T = resolved_T(cfg);
    return out;
}

Trajectory run_trajectory(const ImexIntegrator& integrator, const GridField& u0, double duration, int stride, double k) {
    Trajectory tr;
    tr.final_state = integrator.evolve(integrator.initial_state(u0), duration, stride,
                                       [&](double t, const ModeField& m) { tr.reports.push_back(energy_report(m, t, k)); });
    return tr;
}

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& series, double theoretical) {
    if (series.size() < 5) throw DegenerateSeries("decay fit needs at least 5 points, got " + std::to_string(series.size()));
    for (const auto& [t, v] : series)
        if (!(v > 0.0) || !std::isfinite(v) || !std::isfinite(t)) throw DegenerateSeries("decay fit needs finite positive values");

    DecayFit fit;
    fit.series = series;
    fit.theoretical_rate = theoretical;

    const double floor = 1e-12 * series.front().second;
    std::vector<double> ts;
    std::vector<double> ys;
    for (const auto& [t, v] : series)
        if (v > floor) {
            ts.push_back(t);
            ys.push_back(std::log(v));
        }
    fit.window = ts.size();
    if (ts.size() < 5) throw DegenerateSeries("fewer than 5 points above the 1e-12 floor");

    const double n = static_cast<double>(ts.size());
    double tm = 0.0;
    double ym = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        tm += ts[i];
        ym += ys[i];
    }
    tm /= n;
    ym /= n;
    double stt = 0.0;
    double sty = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - tm) * (ts[i] - tm);
        sty += (ts[i] - tm) * (ys[i] - ym);
        syy += (ys[i] - ym) * (ys[i] - ym);
    }
    if (!(stt > 0.0)) throw DegenerateSeries("all sample times coincide");
    const double slope = sty / stt;
    fit.fitted_rate = -slope;
    if (syy > 0.0) {
        const double ss_res = syy - slope * sty;
        fit.r_squared = 1.0 - std::max(ss_res, 0.0) / syy;
    } else {
        fit.r_squared = 1.0;
    }
    return fit;
}

double estimate_cs2(const ImexIntegrator& integrator, const GridField& u0, double duration, int stride) {
    double cs2 = 0.0;
    integrator.evolve(integrator.initial_state(u0), duration, stride, [&](double, const ModeField& m) {
        const GradientNorms n = gradient_norms(m);
        cs2 = std::max(cs2, 2.0 * (l2_squared(m) + n.ux + n.uy + n.uxy));
    });
    return cs2;
}

DecayExperiment run_decay_experiment(const ExperimentConfig& cfg) {
    const ExperimentConfig rc = resolve(cfg);
    kernels::set_threads(rc.threads);
    const StripGrid grid = rc.grid();
    const GridField u0 = make_initial_data(grid, rc.data);

    DecayExperiment out;
    out.smallness = check_smallness(u0);
    require_pass(out.smallness, "initial data fails the smallness hypotheses");

    ImexOptions opts;
    opts.nonlinear = rc.nonlinear;
    const ImexIntegrator integrator(grid, *rc.dt, opts);
    const double T = *rc.T;

    out.Cs2 = rc.Cs2 ? *rc.Cs2 : estimate_cs2(integrator, u0, std::min(T, rc.cs_window), rc.stride);
    out.decay = check_decay_conditions(u0, rc.k, out.Cs2);
    require_pass(out.decay, "initial data fails the decay hypotheses");

    Trajectory tr = run_trajectory(integrator, u0, T, rc.stride, rc.k);
    out.reports = std::move(tr.reports);

    std::vector<std::pair<double, double>> expk;
    std::vector<std::pair<double, double>> h2;
    for (const EnergyReport& r : out.reports) {
        expk.emplace_back(r.t, r.expk);
        h2.emplace_back(r.t, r.h2);
    }
    const double rate = theoretical_rate(rc.k, rc.B);
    out.exp_weighted = fit_decay_rate(expk, rate);
    out.h2 = fit_decay_rate(h2, rate);
    out.rate_ok = out.exp_weighted.fitted_rate >= 0.9 * rate;

    const double w0 = out.reports.front().w1;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n < out.reports.size(); ++n) worst = std::max(worst, (out.reports[n].w1 - out.reports[n - 1].w1) / w0);
    out.w1_max_increase = out.reports.size() > 1 ? worst : 0.0;
    return out;
}

double l2_balance_residual(std::span<const EnergyReport> reports) {
    if (reports.empty()) throw InvalidArgument("empty trajectory");
    const double e0 = reports.front().l2;
    if (!(e0 > 0.0)) throw InvalidArgument("L2 balance residual undefined for zero initial data");
    double cumulative = 0.0;
    double worst = 0.0;
    for (std::size_t n = 1; n < reports.size(); ++n) {
        cumulative += 0.5 * (reports[n].t - reports[n - 1].t) * (reports[n].flux + reports[n - 1].flux);
        worst = std::max(worst, std::abs(reports[n].l2 + cumulative - e0) / e0);
    }
    return worst;
}

std::vector<double> galerkin_convergence(const ExperimentConfig& cfg, std::span<const int> mode_counts) {
    if (mode_counts.size() < 2) throw InvalidArgument("Galerkin convergence needs at least two mode counts");
    for (std::size_t i = 0; i < mode_counts.size(); ++i) {
        if (mode_counts[i] < 2) throw InvalidArgument("mode counts must be >= 2");
        if (i > 0 && mode_counts[i] <= mode_counts[i - 1]) throw InvalidArgument("mode counts must be strictly increasing");
    }

    ExperimentConfig top = cfg;
    top.Ny = mode_counts.back();
    const ExperimentConfig rc = resolve(top);
    kernels::set_threads(rc.threads);
    ImexOptions opts;
    opts.nonlinear = rc.nonlinear;

    std::vector<ModeField> finals;
    for (int n : mode_counts) {
        const StripGrid grid = build_grid(rc.B, *rc.L, rc.Nx, n);
        const GridField u0 = make_initial_data(grid, rc.data);
        const ImexIntegrator integrator(grid, *rc.dt, opts);
        finals.push_back(integrator.evolve(integrator.initial_state(u0), *rc.T).modes);
    }

    std::vector<double> diffs;
    for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
        const ModeField& lo = finals[k];
        const ModeField& hi = finals[k + 1];
        const double dx = lo.grid().dx;
        double s = 0.0;
        for (int j = 1; j <= hi.modes(); ++j) {
            auto h = hi.mode(j);
            for (int i = 0; i < rc.Nx; ++i) {
                const double d = j <= lo.modes() ? h[i] - lo(j, i) : h[i];
                s += d * d;
            }
        }
        diffs.push_back(std::sqrt(s * dx));
    }
    return diffs;
}

GridField perturbation_shape(const StripGrid& grid, const InitialData& data) {
    InitialData p;
    p.family = "gauss_mode";
    p.amplitude = 1.0;
    p.center = data.center + 1.0;
    p.width = data.width;
    p.mode = std::min(2, grid.Ny);
    p.l2_norm = 1.0;
    return make_initial_data(grid, p);
}

DependenceResult continuous_dependence(const ExperimentConfig& cfg, double delta) {
    if (!(delta >= 0.0)) throw InvalidArgument("perturbation amplitude must be non-negative");
    const ExperimentConfig rc = resolve(cfg);
    kernels::set_threads(rc.threads);
    const StripGrid grid = rc.grid();
    const GridField u0 = make_initial_data(grid, rc.data);
    const GridField u0b = u0 + delta * perturbation_shape(grid, rc.data);
    require_pass(check_smallness(u0), "base data fails the smallness hypotheses");
    require_pass(check_smallness(u0b), "perturbed data fails the smallness hypotheses");

    ImexOptions opts;
    opts.nonlinear = rc.nonlinear;
    const ImexIntegrator integrator(grid, *rc.dt, opts);
    const SineBasis& basis = integrator.basis();
    const auto w = weight_table(grid, WeightSpec::poly1());

    DependenceResult res;
    res.identical = true;
    SolverState s1 = integrator.initial_state(u0);
    SolverState s2 = integrator.initial_state(u0b);
    const long n = steps_for(*rc.T, *rc.dt);
    double wz0 = 0.0;

    auto observe = [&]() {
        res.identical = res.identical && s1.modes == s2.modes;
        const ModeField z = s1.modes - s2.modes;
        const double wz = weighted_l2(z, WeightSpec::poly1());
        if (s1.step == 0) wz0 = wz;
        if (delta > 0.0) {
            res.factor = std::max(res.factor, std::sqrt(l2_squared(z)) / delta);
            if (wz0 > 0.0) res.weighted_factor = std::max(res.weighted_factor, std::sqrt(wz / wz0));
        }
        const GridField u1 = basis.synthesize(s1.modes);
        const GridField u2 = basis.synthesize(s2.modes);
        GridField M(grid);
        for (std::size_t k = 0; k < M.values().size(); ++k) {
            const double a = u1.values()[k];
            const double b = u2.values()[k];
            M.values()[k] = a * a + a * b + b * b;
        }
        GridField Mx(grid);
        kernels::centered_dx(grid.Nx, grid.Ny, grid.dx, M.values(), Mx.values());
        for (int i = 0; i < grid.Nx; ++i)
            for (int m = 0; m < grid.Ny; ++m)
                res.gronwall_c = std::max(res.gronwall_c, std::abs(M(i, m) - w[i] * Mx(i, m)) / 3.0);
    };

    observe();
    for (long k = 1; k <= n; ++k) {
        s1 = integrator.step(s1);
        s2 = integrator.step(s2);
        if (k % rc.stride == 0 || k == n) observe();
    }
    res.duration = s1.t;
    return res;
}

double linear_oracle_compare(int j, const StripGrid& grid, double T, double dt, std::span<const double> profile,
                             bool lambda_coupling) {
    if (grid.Nx > 64) throw InvalidArgument("linear oracle is dense: Nx must be <= 64");
    if (static_cast<int>(profile.size()) != grid.Nx) throw InvalidDimension("profile length must equal Nx");
    if (j < 1 || j > grid.Ny) throw InvalidArgument("mode index outside grid");

    ImexOptions opts;
    opts.nonlinear = false;
    opts.lambda_coupling = lambda_coupling;
    const ImexIntegrator integrator(grid, dt, opts);

    ModeField g0(grid);
    std::copy(profile.begin(), profile.end(), g0.mode(j).begin());
    const SolverState fin = integrator.evolve(integrator.initial_state(g0), T);

    const int n = grid.Nx;
    const std::vector<double> dense = integrator.mode_operator(j).matrix.to_dense();
    Eigen::MatrixXd A(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) A(r, c) = dense[static_cast<std::size_t>(r) * n + c];
    const Eigen::MatrixXd propagator = (-fin.t * A).exp();
    const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(profile.data(), n);
    const Eigen::VectorXd ref = propagator * p;
    const Eigen::VectorXd got = Eigen::Map<const Eigen::VectorXd>(fin.modes.mode(j).data(), n);

    const double denom = ref.norm();
    if (!(denom > 0.0)) return (got - ref).norm();
    return (got - ref).norm() / denom;
}

GridField random_smooth_field(const StripGrid& grid, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> ymode(1, std::min(grid.Ny, 6));
    std::uniform_int_distribution<int> xmode(1, 10);
    std::uniform_int_distribution<int> kind(0, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    struct Term {
        int j;
        bool gaussian;
        double amp;
        int nx[3];
        double cx[3];
        double center;
        double width;
    };
    const double scale = std::pow(10.0, -3.0 + 4.0 * unit(rng));
    std::vector<Term> terms(nterms(rng));
    for (Term& t : terms) {
        t.j = ymode(rng);
        t.gaussian = kind(rng) == 1;
        t.amp = scale * normal(rng);
        for (int s = 0; s < 3; ++s) {
            t.nx[s] = xmode(rng);
            t.cx[s] = normal(rng) / (1.0 + s);
        }
        t.center = (0.05 + 0.75 * unit(rng)) * grid.L;
        t.width = 0.3 + 1.7 * unit(rng);
    }

    const double L = grid.L;
    const double B = grid.B;
    return GridField::sample(grid, [&](double x, double y) {
        double v = 0.0;
        for (const Term& t : terms) {
            double px = 0.0;
            if (t.gaussian) {
                // subtract the linear interpolant of the end values so px(L) = 0 too
                px = taper_profile(x, t.center, t.width) - taper_profile(L, t.center, t.width) * x / L;
            } else {
                for (int s = 0; s < 3; ++s) px += t.cx[s] * std::sin(t.nx[s] * pi * x / L);
            }
            v += t.amp * px * std::sin(t.j * pi * y / B);
        }
        return v;
    });
}

InequalitySummary verify_inequalities(const StripGrid& grid, std::uint64_t seed, int trials) {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    std::mt19937_64 rng(seed);
    const double steklov_floor = pi * pi / (grid.B * grid.B);

    InequalitySummary s;
    s.trials = trials;
    s.worst_steklov = std::numeric_limits<double>::infinity();
    s.worst_l4 = std::numeric_limits<double>::infinity();
    s.worst_l8 = std::numeric_limits<double>::infinity();
    s.worst_sup = std::numeric_limits<double>::infinity();

    for (int n = 0; n < trials; ++n) {
        const GridField f = random_smooth_field(grid, rng);
        const double steklov = steklov_check(f) - steklov_floor;
        const InterpolationReport ip = interpolation_check(f);
        const SupBound sb = sup_bound_check(f);
        const double l4 = ip.l4_margin() / ip.l4_rhs;
        const double l8 = ip.l8_margin() / ip.l8_rhs;
        const double sup = sb.bound - sb.sup2;

        s.worst_steklov = std::min(s.worst_steklov, steklov);
        s.worst_l4 = std::min(s.worst_l4, l4);
        s.worst_l8 = std::min(s.worst_l8, l8);
        s.worst_sup = std::min(s.worst_sup, sup);

        const bool ok = steklov >= -kAbsSlack && l4 >= -kRelSlack && l8 >= -kRelSlack && sb.sup2 <= sb.bound + kAbsSlack;
        if (!ok) ++s.failures;
    }
    return s;
}

}  // namespace zk

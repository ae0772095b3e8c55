#include "zk/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "zk/dynamics.hpp"
#include "zk/error.hpp"
#include "zk/kernels.hpp"
#include "zk/spectral.hpp"

namespace zk {

namespace {

constexpr double pi = std::numbers::pi;

// sum_j g_j(x_i)^2 for each x-node, i.e. int_0^B u(x_i, y)^2 dy by Parseval.
std::vector<double> row_energy(const ModeField& m) {
    const StripGrid& g = m.grid();
    std::vector<double> e(g.Nx, 0.0);
    for (int j = 1; j <= g.Ny; ++j) {
        auto row = m.mode(j);
        for (int i = 0; i < g.Nx; ++i) e[i] += row[i] * row[i];
    }
    return e;
}

double weighted_sum(const std::vector<double>& row, const StripGrid& g, const WeightSpec& w) {
    double s = 0.0;
    if (w.kind == WeightSpec::Kind::unit) {
        for (double v : row) s += v;
    } else {
        const auto table = weight_table(g, w);
        for (int i = 0; i < g.Nx; ++i) s += table[i] * row[i];
    }
    return s * g.dx;
}

double forward_diff_sq(std::span<const double> v, double dx) {
    const int n = static_cast<int>(v.size());
    double s = 0.0;
    double prev = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double cur = i < n ? v[i] : 0.0;
        const double d = cur - prev;
        s += d * d;
        prev = cur;
    }
    return s / dx;  // sum (d/dx)^2 dx
}

double second_diff_sq(std::span<const double> v, double dx) {
    const int n = static_cast<int>(v.size());
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double l = i > 0 ? v[i - 1] : 0.0;
        const double r = i + 1 < n ? v[i + 1] : 0.0;
        const double d = r - 2.0 * v[i] + l;
        s += d * d;
    }
    return s / (dx * dx * dx);
}

double sum_sq(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

bool within_bound(double lhs, double rhs) { return lhs <= rhs + kAbsSlack + kRelSlack * std::abs(rhs); }

double l2_squared(const GridField& f) {
    return sum_sq(f.values()) * f.grid().dx * f.grid().dy;
}

double l2_squared(const ModeField& m) { return sum_sq(m.values()) * m.grid().dx; }

double weighted_l2(const GridField& f, const WeightSpec& w) {
    const StripGrid& g = f.grid();
    std::vector<double> row(g.Nx, 0.0);
    for (int i = 0; i < g.Nx; ++i) row[i] = sum_sq(f.row(i)) * g.dy;
    return weighted_sum(row, g, w);
}

double weighted_l2(const ModeField& m, const WeightSpec& w) { return weighted_sum(row_energy(m), m.grid(), w); }

GradientNorms gradient_norms(const ModeField& m) {
    const StripGrid& g = m.grid();
    GradientNorms n;
    for (int j = 1; j <= g.Ny; ++j) {
        const double lambda = eigenpair(j, g.B).lambda;
        auto row = m.mode(j);
        const double l2 = sum_sq(row) * g.dx;
        const double dx2 = forward_diff_sq(row, g.dx);
        n.ux += dx2;
        n.uxx += second_diff_sq(row, g.dx);
        n.uy += lambda * l2;
        n.uxy += lambda * dx2;
        n.uyy += lambda * lambda * l2;
    }
    return n;
}

GradientNorms gradient_norms(const GridField& f) { return gradient_norms(to_modes(f)); }

double boundary_flux(const ModeField& m) {
    const StripGrid& g = m.grid();
    double s = 0.0;
    for (int j = 1; j <= g.Ny; ++j) {
        const double d = (4.0 * m(j, 0) - m(j, 1)) / (2.0 * g.dx);
        s += d * d;
    }
    return s;
}

double boundary_flux(const GridField& f) { return boundary_flux(to_modes(f)); }

GridField laplacian_dx(const ModeField& m) {
    const StripGrid& g = m.grid();
    ModeField out(g);
    for (int j = 1; j <= g.Ny; ++j) linear_operator(j, g).matrix.apply(m.mode(j), out.mode(j));
    return to_physical(out);
}

JTerms j_functional_terms(const GridField& u0, const WeightSpec& w) {
    const StripGrid& g = u0.grid();
    const auto weight = weight_table(g, w);
    const SineBasis basis(g);
    const ModeField modes = basis.analyze(u0);
    const GridField uy = basis.synthesize_dy(modes);
    const GridField lap = laplacian_dx(modes);
    GridField ux(g);
    kernels::centered_dx(g.Nx, g.Ny, g.dx, u0.values(), ux.values());

    JTerms t;
    for (int i = 0; i < g.Nx; ++i) {
        double q = 0.0;
        double s = 0.0;
        for (int m = 0; m < g.Ny; ++m) {
            const double u = u0(i, m);
            const double dx = ux(i, m);
            const double dy = uy(i, m);
            const double l = lap(i, m);
            q += u * u + dx * dx + dy * dy + l * l;
            s += u * u * u * u * dx * dx;
        }
        t.quadratic += weight[i] * q;
        t.sextic += weight[i] * s;
    }
    t.quadratic *= g.dx * g.dy;
    t.sextic *= g.dx * g.dy;
    return t;
}

double j_functional(const GridField& u0) { return j_functional_terms(u0, WeightSpec::poly2()).total(); }

double k_functional(double a, double b, double c) {
    if (a < 0.0 || b < 0.0 || c < 0.0) throw InvalidArgument("K functional arguments must be non-negative");
    const double p8 = 256.0;
    const double p9 = 512.0;
    const double cubic = 5.0 * a * a * a + 4.0 * b * b * b;
    return p8 * a * a * (9.0 * a * a + 2.0 * c) + p9 * a * cubic * (1.0 + p8 * a * cubic);
}

GridField initial_ut(const GridField& u0) {
    GridField ut = laplacian_dx(to_modes(u0));
    ut += nonlinear_rhs(u0);
    ut *= -1.0;
    return ut;
}

const Gate* ConditionReport::first_failure() const {
    for (const Gate& g : gates)
        if (!g.passed) return &g;
    return nullptr;
}

double smallness_threshold(double B) { return std::min(1.0 / 8.0, pi * pi / (4.0 * B * B)); }
double k_threshold(double B) { return pi * pi / (2.0 * B * B); }
double decay_k_cap(double B) { return pi / (std::sqrt(20.0) * B); }
double decay_cs2_threshold(double k, double B) { return std::min(k * pi * pi / (4.0 * B * B), 2.0 * k); }

ConditionReport check_smallness(const GridField& u0) {
    const StripGrid& g = u0.grid();
    ConditionReport r;
    r.u0_l2 = std::sqrt(l2_squared(u0));
    r.threshold_32 = smallness_threshold(g.B);

    const double a = std::sqrt(weighted_l2(u0, WeightSpec::poly2()));
    const GridField ut = initial_ut(u0);
    const double c = weighted_l2(ut, WeightSpec::poly2());
    const double b = std::sqrt(c);
    r.K0 = k_functional(a, b, c);
    r.K_threshold = k_threshold(g.B);
    r.J = j_functional(u0);

    r.gates.push_back({"u0_l2 < min(1/8, pi^2/(4B^2))", r.u0_l2, r.threshold_32, r.u0_l2 < r.threshold_32});
    r.gates.push_back({"K(0) < pi^2/(2B^2)", r.K0, r.K_threshold, r.K0 < r.K_threshold});
    r.gates.push_back({"J(u0) finite", r.J, std::numeric_limits<double>::infinity(), std::isfinite(r.J)});
    r.pass = std::all_of(r.gates.begin(), r.gates.end(), [](const Gate& x) { return x.passed; });
    return r;
}

ConditionReport check_decay_conditions(const GridField& u0, double k, double Cs2) {
    if (!(k > 0.0)) throw InvalidArgument("decay parameter k must be positive");
    const StripGrid& g = u0.grid();
    ConditionReport r;
    r.k = k;
    r.Cs2 = Cs2;
    r.k_cap = decay_k_cap(g.B);
    r.Cs2_threshold = decay_cs2_threshold(k, g.B);
    try {
        r.J_exp = j_functional_terms(u0, WeightSpec::exponential(k)).total();
    } catch (const WeightOverflow&) {
        r.J_exp = std::numeric_limits<double>::infinity();
    }

    r.gates.push_back({"k <= pi/(sqrt(20) B)", k, r.k_cap, k <= r.k_cap});
    r.gates.push_back({"Cs^2 <= min(k pi^2/(4B^2), 2k)", Cs2, r.Cs2_threshold, Cs2 <= r.Cs2_threshold});
    r.gates.push_back({"J_exp(u0) finite", r.J_exp, std::numeric_limits<double>::infinity(), std::isfinite(r.J_exp)});
    r.pass = std::all_of(r.gates.begin(), r.gates.end(), [](const Gate& x) { return x.passed; });
    return r;
}

double steklov_check(const GridField& f) {
    const ModeField m = to_modes(f);
    const double l2 = l2_squared(m);
    if (!(l2 > 0.0)) throw InvalidArgument("Steklov ratio undefined for the zero field");
    return gradient_norms(m).uy / l2;
}

InterpolationReport interpolation_check(const GridField& f) {
    const StripGrid& g = f.grid();
    const double l2 = l2_squared(f);
    const double grad = gradient_norms(f).grad();
    double s4 = 0.0;
    double s8 = 0.0;
    for (double u : f.values()) {
        const double u2 = u * u;
        const double u4 = u2 * u2;
        s4 += u4;
        s8 += u4 * u4;
    }
    const double cell = g.dx * g.dy;
    InterpolationReport r;
    r.l4_lhs = std::sqrt(s4 * cell);
    r.l4_rhs = 2.0 * std::sqrt(grad) * std::sqrt(l2);
    r.l8_lhs = std::pow(s8 * cell, 0.25);
    r.l8_rhs = 8.0 * std::pow(grad, 0.75) * std::pow(l2, 0.25);
    return r;
}

SupBound sup_bound_check(const GridField& f) {
    const ModeField m = to_modes(f);
    const GradientNorms n = gradient_norms(m);
    double sup2 = 0.0;
    for (double u : f.values()) sup2 = std::max(sup2, u * u);
    return {sup2, 2.0 * (l2_squared(m) + n.ux + n.uy + n.uxy)};
}

EnergyReport energy_report(const ModeField& m, double t, double k) {
    const StripGrid& g = m.grid();
    const auto rows = row_energy(m);
    const GradientNorms n = gradient_norms(m);
    EnergyReport r;
    r.t = t;
    r.l2 = weighted_sum(rows, g, WeightSpec::unit());
    r.h1 = r.l2 + n.ux + n.uy;
    r.h2 = r.h1 + n.uxx + n.uxy + n.uyy;
    r.w1 = weighted_sum(rows, g, WeightSpec::poly1());
    r.w2 = weighted_sum(rows, g, WeightSpec::poly2());
    r.expk = k > 0.0 ? weighted_sum(rows, g, WeightSpec::exponential(k)) : r.l2;
    r.flux = boundary_flux(m);
    r.uxy = n.uxy;

    const GridField f = to_physical(m);
    for (double u : f.values()) r.sup2 = std::max(r.sup2, u * u);
    r.sup2_bound = 2.0 * r.h2;

    double tail = 0.0;
    for (int i = 0; i < g.Nx; ++i)
        if (g.x(i) > 0.9 * g.L) tail += rows[i];
    r.tail = tail * g.dx;
    return r;
}

EnergyReport energy_report(const GridField& f, double t, double k) { return energy_report(to_modes(f), t, k); }

}  // namespace zk

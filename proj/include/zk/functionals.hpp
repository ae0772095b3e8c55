#pragma once

#include <string>
#include <vector>

#include "zk/field.hpp"
#include "zk/grid.hpp"

namespace zk {

// Inequality checks accept lhs <= rhs + abs_slack + rel_slack * |rhs|.
inline constexpr double kAbsSlack = 1e-10;
inline constexpr double kRelSlack = 1e-8;
bool within_bound(double lhs, double rhs);

/// ||u||^2 as the dx*dy-weighted sum over interior nodes (boundary values are zero).
double l2_squared(const GridField& f);
double l2_squared(const ModeField& m);

/// (w, u^2) = sum_i w(x_i) sum_m u(x_i, y_m)^2 dx dy
double weighted_l2(const GridField& f, const WeightSpec& w);
double weighted_l2(const ModeField& m, const WeightSpec& w);

struct GradientNorms {
    double ux = 0.0;
    double uy = 0.0;
    double uxy = 0.0;
    double uxx = 0.0;
    double uyy = 0.0;

    double grad() const { return ux + uy; }
};

// Squared L^2 norms of the derivatives. First x-derivatives are forward
// differences over all Nx+1 cells (zero boundary data), u_xx is the
// three-point second difference, y-derivatives are exact per mode.
GradientNorms gradient_norms(const GridField& f);
GradientNorms gradient_norms(const ModeField& m);

/// int_0^B u_x(0,y)^2 dy with u_x(0, .) from the one-sided (4u_1 - u_2)/(2dx).
double boundary_flux(const GridField& f);
double boundary_flux(const ModeField& m);

/// Delta u_x = u_xxx + u_xyy with the discretisation used by the time stepper.
GridField laplacian_dx(const ModeField& m);

struct JTerms {
    double quadratic = 0.0;  // u^2 + |grad u|^2 + |Delta u_x|^2
    double sextic = 0.0;     // u^4 u_x^2
    double total() const { return quadratic + sextic; }
};

JTerms j_functional_terms(const GridField& u0, const WeightSpec& w);
/// (1+x)^2-weighted J(u0).
double j_functional(const GridField& u0);

/// K = 2^8 a^2 (9 a^2 + 2c) + 2^9 a (5a^3 + 4b^3) [1 + 2^8 a (5a^3 + 4b^3)]
/// with a = ||(1+x)u0||, b = ||(1+x)u_t||, c = ((1+x)^2, u_t^2).
double k_functional(double a, double b, double c);

/// u_t at t = 0: -(u_xxx + u_xyy + (1/3)(u^3)_x).
GridField initial_ut(const GridField& u0);

struct Gate {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct ConditionReport {
    // smallness (existence) gates
    double u0_l2 = 0.0;
    double threshold_32 = 0.0;
    double J = 0.0;
    double K0 = 0.0;
    double K_threshold = 0.0;
    // decay gates
    double Cs2 = 0.0;
    double k = 0.0;
    double k_cap = 0.0;
    double Cs2_threshold = 0.0;
    double J_exp = 0.0;

    std::vector<Gate> gates;
    bool pass = false;

    const Gate* first_failure() const;
};

double smallness_threshold(double B);      // min(1/8, pi^2/(4B^2))
double k_threshold(double B);              // pi^2/(2B^2)
double decay_k_cap(double B);              // pi/(sqrt(20) B)
double decay_cs2_threshold(double k, double B);  // min(k pi^2/(4B^2), 2k)

ConditionReport check_smallness(const GridField& u0);
ConditionReport check_decay_conditions(const GridField& u0, double k, double Cs2);

/// ||u_y||^2 / ||u||^2; throws InvalidArgument for the zero field.
double steklov_check(const GridField& f);

struct InterpolationReport {
    // squared forms: ||u||_{L4}^2 <= 2 ||grad u|| ||u||
    double l4_lhs = 0.0;
    double l4_rhs = 0.0;
    // ||u||_{L8}^2 <= (4^{3/4})^2 ||grad u||^{3/2} ||u||^{1/2}
    double l8_lhs = 0.0;
    double l8_rhs = 0.0;

    double l4_margin() const { return l4_rhs - l4_lhs; }
    double l8_margin() const { return l8_rhs - l8_lhs; }
};

InterpolationReport interpolation_check(const GridField& f);

struct SupBound {
    double sup2 = 0.0;
    double bound = 0.0;  // 2 (||u||_{H1}^2 + ||u_xy||^2)
};

SupBound sup_bound_check(const GridField& f);

struct EnergyReport {
    double t = 0.0;
    double l2 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double w1 = 0.0;    // ((1+x), u^2)
    double w2 = 0.0;    // ((1+x)^2, u^2)
    double expk = 0.0;  // (e^{kx}, u^2)
    double flux = 0.0;
    double sup2 = 0.0;
    double sup2_bound = 0.0;  // 2 h2
    double tail = 0.0;        // ||u||^2 over x > 0.9 L
    double uxy = 0.0;         // kept for the C_s estimate, not serialised
};

EnergyReport energy_report(const GridField& f, double t, double k);
EnergyReport energy_report(const ModeField& m, double t, double k);

}  // namespace zk

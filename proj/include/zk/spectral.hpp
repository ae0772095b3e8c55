#pragma once

#include <vector>

#include "zk/field.hpp"
#include "zk/grid.hpp"

namespace zk {

/// Dirichlet eigenpair of -d^2/dy^2 on (0, B): lambda_j = (j pi / B)^2,
/// w_j(y) = sqrt(2/B) sin(j pi y / B), orthonormal in L^2(0, B).
struct Eigenpair {
    int j = 1;
    double B = 1.0;
    double lambda = 0.0;

    double operator()(double y) const;
    double derivative(double y) const;
};

Eigenpair eigenpair(int j, double B);

/// Type-I discrete sine transform between a GridField and its ModeField.
///
/// Forward:  g_j(x_i) = dy * sum_m u(x_i, y_m) w_j(y_m)
/// Inverse:  u(x_i, y_m) = sum_j g_j(x_i) w_j(y_m)
///
/// With y_m = (m+1) B / (Ny+1) the sampled basis is exactly orthonormal under
/// the dy-weighted sum, so the pair is mutually inverse and Parseval holds
/// without boundary corrections.
class SineBasis {
public:
    explicit SineBasis(const StripGrid& grid);

    const StripGrid& grid() const { return grid_; }

    ModeField analyze(const GridField& f) const;
    GridField synthesize(const ModeField& m) const;
    // u_y on the grid, differentiating each basis function exactly.
    GridField synthesize_dy(const ModeField& m) const;

    void analyze_into(const GridField& f, ModeField& out) const;
    void synthesize_into(const ModeField& m, GridField& out) const;

    // w_j(y_m), row j-1 holds mode j.
    const std::vector<double>& table() const { return sin_table_; }

private:
    StripGrid grid_;
    std::vector<double> sin_table_;
    std::vector<double> dcos_table_;
};

ModeField to_modes(const GridField& f);
GridField to_physical(const ModeField& m);

}  // namespace zk

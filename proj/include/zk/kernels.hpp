#pragma once

// Data-parallel inner loops. Each kernel parallelises over modes or x-rows
// with OpenMP; every output element is produced by exactly one thread with a
// fixed summation order, so results are bitwise identical for any thread
// count. The `reference` namespace holds plain serial versions used by the
// tests and the benchmark as the baseline.

#include <span>

namespace zk::kernels {

// coeffs[j*nx + i] = scale * sum_m table[j*ny + m] * field[i*ny + m]
void sine_analysis(std::span<const double> table, int nx, int ny, double scale,
                   std::span<const double> field, std::span<double> coeffs);

// field[i*ny + m] = sum_j table[j*ny + m] * coeffs[j*nx + i]
void sine_synthesis(std::span<const double> table, int nx, int ny,
                    std::span<const double> coeffs, std::span<double> field);

// Centred x-difference of every y-column, zero Dirichlet data at x = 0 and x = L.
void centered_dx(int nx, int ny, double dx, std::span<const double> field, std::span<double> out);

// (1/3) d/dx (f^3) in conservative centred form, zero Dirichlet data.
void cubic_flux_dx(int nx, int ny, double dx, std::span<const double> field, std::span<double> out);

namespace reference {

void sine_analysis(std::span<const double> table, int nx, int ny, double scale,
                   std::span<const double> field, std::span<double> coeffs);
void sine_synthesis(std::span<const double> table, int nx, int ny,
                    std::span<const double> coeffs, std::span<double> field);
void centered_dx(int nx, int ny, double dx, std::span<const double> field, std::span<double> out);
void cubic_flux_dx(int nx, int ny, double dx, std::span<const double> field, std::span<double> out);

}  // namespace reference

/// Number of OpenMP threads kernels will use; set_threads(n <= 0) keeps the runtime default.
int threads();
void set_threads(int n);

}  // namespace zk::kernels

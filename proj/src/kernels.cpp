#include "zk/kernels.hpp"

#include <omp.h>

namespace zk::kernels {

namespace {

inline double at(std::span<const double> f, int i, int m, int nx, int ny) {
    return (i < 0 || i >= nx) ? 0.0 : f[static_cast<std::size_t>(i) * ny + m];
}

inline double cube(double v) { return v * v * v; }

}  // namespace

void sine_analysis(std::span<const double> table, int nx, int ny, double scale,
                   std::span<const double> field, std::span<double> coeffs) {
    // One mode per iteration keeps the coefficient writes contiguous.
#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const double* basis = table.data() + static_cast<std::size_t>(j) * ny;
        double* out = coeffs.data() + static_cast<std::size_t>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            const double* row = field.data() + static_cast<std::size_t>(i) * ny;
            double s = 0.0;
            for (int m = 0; m < ny; ++m) s += basis[m] * row[m];
            out[i] = scale * s;
        }
    }
}

void sine_synthesis(std::span<const double> table, int nx, int ny,
                    std::span<const double> coeffs, std::span<double> field) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        double* row = field.data() + static_cast<std::size_t>(i) * ny;
        for (int m = 0; m < ny; ++m) row[m] = 0.0;
        for (int j = 0; j < ny; ++j) {
            const double c = coeffs[static_cast<std::size_t>(j) * nx + i];
            const double* basis = table.data() + static_cast<std::size_t>(j) * ny;
            for (int m = 0; m < ny; ++m) row[m] += c * basis[m];
        }
    }
}

void centered_dx(int nx, int ny, double dx, std::span<const double> field, std::span<double> out) {
    const double h = 0.5 / dx;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i)
        for (int m = 0; m < ny; ++m)
            out[static_cast<std::size_t>(i) * ny + m] = h * (at(field, i + 1, m, nx, ny) - at(field, i - 1, m, nx, ny));
}

void cubic_flux_dx(int nx, int ny, double dx, std::span<const double> field, std::span<double> out) {
    const double h = 1.0 / (6.0 * dx);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i)
        for (int m = 0; m < ny; ++m)
            out[static_cast<std::size_t>(i) * ny + m] =
                h * (cube(at(field, i + 1, m, nx, ny)) - cube(at(field, i - 1, m, nx, ny)));
}

namespace reference {

void sine_analysis(std::span<const double> table, int nx, int ny, double scale,
                   std::span<const double> field, std::span<double> coeffs) {
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double s = 0.0;
            for (int m = 0; m < ny; ++m) s += table[j * ny + m] * field[static_cast<std::size_t>(i) * ny + m];
            coeffs[static_cast<std::size_t>(j) * nx + i] = scale * s;
        }
}

void sine_synthesis(std::span<const double> table, int nx, int ny,
                    std::span<const double> coeffs, std::span<double> field) {
    for (int i = 0; i < nx; ++i)
        for (int m = 0; m < ny; ++m) {
            double s = 0.0;
            for (int j = 0; j < ny; ++j) s += coeffs[static_cast<std::size_t>(j) * nx + i] * table[j * ny + m];
            field[static_cast<std::size_t>(i) * ny + m] = s;
        }
}

void centered_dx(int nx, int ny, double dx, std::span<const double> field, std::span<double> out) {
    for (int m = 0; m < ny; ++m)
        for (int i = 0; i < nx; ++i)
            out[static_cast<std::size_t>(i) * ny + m] = 0.5 / dx * (at(field, i + 1, m, nx, ny) - at(field, i - 1, m, nx, ny));
}

void cubic_flux_dx(int nx, int ny, double dx, std::span<const double> field, std::span<double> out) {
    for (int m = 0; m < ny; ++m)
        for (int i = 0; i < nx; ++i)
            out[static_cast<std::size_t>(i) * ny + m] =
                1.0 / (6.0 * dx) * (cube(at(field, i + 1, m, nx, ny)) - cube(at(field, i - 1, m, nx, ny)));
}

}  // namespace reference

int threads() { return omp_get_max_threads(); }

void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

}  // namespace zk::kernels

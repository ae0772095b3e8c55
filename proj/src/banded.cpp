#include "zk/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

#include "zk/error.hpp"

namespace zk {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), band_(static_cast<std::size_t>(n) * (kl + ku + 1), 0.0) {
    if (n <= 0 || kl < 0 || ku < 0) throw InvalidDimension("invalid banded matrix shape");
}

double& BandedMatrix::at(int i, int j) {
    if (!in_band(i, j)) throw InvalidArgument("entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside band");
    return band_[static_cast<std::size_t>(i) * (kl_ + ku_ + 1) + (j - i + kl_)];
}

double BandedMatrix::operator()(int i, int j) const {
    if (!in_band(i, j)) return 0.0;
    return band_[static_cast<std::size_t>(i) * (kl_ + ku_ + 1) + (j - i + kl_)];
}

void BandedMatrix::apply(std::span<const double> x, std::span<double> y) const {
    const int w = kl_ + ku_ + 1;
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - kl_);
        const int j1 = std::min(n_ - 1, i + ku_);
        const double* row = band_.data() + static_cast<std::size_t>(i) * w + (kl_ - i);
        double s = 0.0;
        for (int j = j0; j <= j1; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

BandedMatrix BandedMatrix::shifted(double alpha, double beta) const {
    BandedMatrix out(n_, kl_, ku_);
    for (std::size_t k = 0; k < band_.size(); ++k) out.band_[k] = beta * band_[k];
    for (int i = 0; i < n_; ++i) out.at(i, i) += alpha;
    return out;
}

std::vector<double> BandedMatrix::to_dense() const {
    std::vector<double> d(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i)
        for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) d[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
    return d;
}

BandedLU::BandedLU(const BandedMatrix& a)
    : n_(a.size()), kl_(a.lower()), ku_(a.upper()), ldab_(2 * a.lower() + a.upper() + 1),
      ab_(static_cast<std::size_t>(ldab_) * n_, 0.0), ipiv_(n_) {
    // LAPACK band layout: A(i,j) -> ab[kl + ku + i - j + j*ldab], column-major
    for (int j = 0; j < n_; ++j)
        for (int i = std::max(0, j - ku_); i <= std::min(n_ - 1, j + kl_); ++i)
            ab_[static_cast<std::size_t>(kl_ + ku_ + i - j) + static_cast<std::size_t>(j) * ldab_] = a(i, j);

    const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(), ldab_, ipiv_.data());
    if (info > 0) throw SingularMatrix("banded matrix is singular (zero pivot at row " + std::to_string(info) + ")");
    if (info < 0) throw InvalidArgument("dgbtrf rejected argument " + std::to_string(-info));
}

void BandedLU::solve(std::span<double> rhs) const {
    if (static_cast<int>(rhs.size()) != n_) throw InvalidDimension("rhs size mismatch in banded solve");
    // dgbtrs takes a non-const ab pointer but does not modify it
    const lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, const_cast<double*>(ab_.data()), ldab_,
                                           ipiv_.data(), rhs.data(), n_);
    if (info != 0) throw InvalidArgument("dgbtrs failed with info " + std::to_string(info));
}

}  // namespace zk

#pragma once

#include <algorithm>
#include <span>
#include <vector>

namespace zk {

/// Square matrix with kl sub- and ku super-diagonals.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(int n, int kl, int ku);

    int size() const { return n_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }

    bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_ && i >= 0 && j >= 0 && i < n_ && j < n_; }
    double& at(int i, int j);
    double operator()(int i, int j) const;

    // y = A x
    void apply(std::span<const double> x, std::span<double> y) const;

    // alpha I + beta A
    BandedMatrix shifted(double alpha, double beta) const;

    // Row-major n x n copy.
    std::vector<double> to_dense() const;

private:
    int n_ = 0;
    int kl_ = 0;
    int ku_ = 0;
    std::vector<double> band_;
};

/// LU factorisation with partial pivoting (LAPACK dgbtrf), reused across solves.
class BandedLU {
public:
    BandedLU() = default;
    explicit BandedLU(const BandedMatrix& a);

    // Overwrites rhs with the solution.
    void solve(std::span<double> rhs) const;

    int size() const { return n_; }

private:
    int n_ = 0;
    int kl_ = 0;
    int ku_ = 0;
    int ldab_ = 0;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

}  // namespace zk

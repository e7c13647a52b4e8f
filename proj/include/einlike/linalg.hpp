#pragma once

#include "einlike/jet.hpp"

#include <span>
#include <vector>

namespace einlike {

/// Dense row-major square matrix of doubles, sized for chart dimensions.
struct Mat {
    int n = 0;
    std::vector<double> a;

    Mat() = default;
    explicit Mat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}
    static Mat identity(int n);

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

Mat operator*(const Mat& x, const Mat& y);

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations with
/// largest-off-diagonal pivoting. Returns eigenvalues and orthonormal
/// eigenvectors (columns of `vectors`).
struct SymEigen {
    std::vector<double> values;
    Mat vectors;
};

SymEigen sym_eigen(const Mat& m);

/// Inverse, determinant and inertia of a symmetric matrix via its
/// eigendecomposition.
struct SymFactorization {
    Mat inverse;
    double det = 0.0;
    int negative = 0;  // count of negative eigenvalues
    int zero = 0;      // |lambda| below the given threshold
};

SymFactorization sym_factorize(const Mat& m, double zero_threshold);

/// Inverse of a square matrix of jets by Gauss-Jordan elimination with partial
/// pivoting on constant-term magnitude. Entries must share dim and order.
std::vector<Jet> jet_matrix_inverse(std::span<const Jet> m, int n);

} // namespace einlike

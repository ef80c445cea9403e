#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "polyapprox/errors.hpp"

namespace pa {

// Dense point/direction in R^n, n = 2..10. Dimensions are small enough that
// plain vectors beat any fancier representation.
using Vec = std::vector<double>;
using Mat = std::vector<Vec>; // row-major, rectangular

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

inline void axpy(double s, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

inline double dist(const Vec& a, const Vec& b) { return norm2(sub(a, b)); }

inline Vec normalized(const Vec& a) {
    double n = norm2(a);
    if (n == 0.0) throw NumericalFailure("cannot normalize zero vector");
    return scale(a, 1.0 / n);
}

inline Vec zeros(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

inline Vec unit(int n, int k) {
    Vec e = zeros(n);
    e[static_cast<std::size_t>(k)] = 1.0;
    return e;
}

// Determinant via LU with partial pivoting. Destroys a local copy.
double det(Mat m);

// Solve A x = b in place, partial pivoting. Throws NumericalFailure when the
// pivot falls below `singular_tol` times the matrix scale.
Vec solve(Mat a, Vec b, double singular_tol = 1e-13);

// Orthonormal basis of span(vectors) by modified Gram-Schmidt; vectors whose
// residual norm falls below tol*scale are dropped.
std::vector<Vec> orthonormal_basis(const std::vector<Vec>& vectors, double tol = 1e-10);

// Rank of the affine hull of a point set (0 for a single point).
int affine_rank(const std::vector<Vec>& points, double tol = 1e-9);

// Coordinates of x in the orthonormal basis `basis` relative to `origin`.
Vec embed(const Vec& x, const Vec& origin, const std::vector<Vec>& basis);

// Eigen-decomposition of a symmetric matrix by cyclic Jacobi.
// Returns eigenvalues; `vecs` receives the orthonormal eigenvectors as columns.
Vec jacobi_eigen_sym(Mat a, Mat& vecs, int sweeps = 64);

// Matrix-vector and matrix-matrix products for small dense matrices.
Vec matvec(const Mat& a, const Vec& x);
Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat identity(int n);

// Deterministic pairwise summation (fixed reduction tree, independent of
// threading of the producer).
double pairwise_sum(const std::vector<double>& v);

// Mean and unbiased standard deviation via pairwise sums.
std::pair<double, double> mean_std(const std::vector<double>& v);

} // namespace pa

#include "polyapprox/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace pa {

double det(Mat m) {
    const int n = static_cast<int>(m.size());
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
        if (m[piv][k] == 0.0) return 0.0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            d = -d;
        }
        d *= m[k][k];
        for (int i = k + 1; i < n; ++i) {
            double f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return d;
}

Vec solve(Mat a, Vec b, double singular_tol) {
    const int n = static_cast<int>(a.size());
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) throw NumericalFailure("solve: zero matrix");
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
        if (std::fabs(a[piv][k]) < singular_tol * scale)
            throw NumericalFailure("solve: singular system");
        if (piv != k) {
            std::swap(a[piv], a[k]);
            std::swap(b[piv], b[k]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = a[i][k] / a[k][k];
            b[i] -= f * b[k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    Vec x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

std::vector<Vec> orthonormal_basis(const std::vector<Vec>& vectors, double tol) {
    std::vector<Vec> basis;
    double sc = 0.0;
    for (const auto& v : vectors) sc = std::max(sc, norm2(v));
    if (sc == 0.0) return basis;
    for (const auto& v : vectors) {
        Vec w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) axpy(-dot(w, b), b, w);
        double n = norm2(w);
        if (n > tol * sc) basis.push_back(scale(w, 1.0 / n));
    }
    return basis;
}

int affine_rank(const std::vector<Vec>& points, double tol) {
    if (points.size() <= 1) return 0;
    std::vector<Vec> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
    return static_cast<int>(orthonormal_basis(diffs, tol).size());
}

Vec embed(const Vec& x, const Vec& origin, const std::vector<Vec>& basis) {
    Vec d = sub(x, origin);
    Vec out(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) out[i] = dot(d, basis[i]);
    return out;
}

Vec jacobi_eigen_sym(Mat a, Mat& vecs, int sweeps) {
    const int n = static_cast<int>(a.size());
    vecs = identity(n);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = vecs[k][p], vkq = vecs[k][q];
                    vecs[k][p] = c * vkp - s * vkq;
                    vecs[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Vec evals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) evals[i] = a[i][i];
    return evals;
}

Vec matvec(const Mat& a, const Vec& x) {
    Vec r(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
    return r;
}

Mat matmul(const Mat& a, const Mat& b) {
    std::size_t n = a.size(), m = b[0].size(), k = b.size();
    Mat r(n, Vec(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    return r;
}

Mat transpose(const Mat& a) {
    Mat r(a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

Mat identity(int n) {
    Mat r(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) r[i][i] = 1.0;
    return r;
}

double pairwise_sum(const std::vector<double>& v) {
    // fixed binary reduction tree so results are independent of who produced
    // the values and in which order
    if (v.empty()) return 0.0;
    std::vector<double> buf(v);
    std::size_t n = buf.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) buf[i] += buf[i + half];
        n = half;
    }
    return buf[0];
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
    if (v.empty()) return {0.0, 0.0};
    double mean = pairwise_sum(v) / static_cast<double>(v.size());
    if (v.size() < 2) return {mean, 0.0};
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
    double var = pairwise_sum(sq) / static_cast<double>(v.size() - 1);
    return {mean, std::sqrt(var)};
}

} // namespace pa

#include "polyapprox/minnorm.hpp"

#include <algorithm>
#include <cmath>

#include "polyapprox/errors.hpp"

namespace pa {

namespace {

// min ||sum a_i z_i|| over affine weights (sum a_i = 1), KKT system solve.
std::vector<double> affine_min_norm(const std::vector<Vec>& z, const std::vector<int>& S) {
    const int m = static_cast<int>(S.size());
    Mat a(static_cast<std::size_t>(m + 1), Vec(static_cast<std::size_t>(m + 1), 0.0));
    Vec b(static_cast<std::size_t>(m + 1), 0.0);
    double sc = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            a[i][j] = dot(z[S[i]], z[S[j]]);
            sc = std::max(sc, std::fabs(a[i][j]));
        }
    double jitter = std::max(sc, 1.0) * 1e-14;
    for (int i = 0; i < m; ++i) a[i][i] += jitter;
    for (int i = 0; i < m; ++i) a[i][m] = a[m][i] = 1.0;
    b[m] = 1.0;
    Vec sol = solve(std::move(a), std::move(b));
    return std::vector<double>(sol.begin(), sol.begin() + m);
}

} // namespace

MinNormResult min_norm_point(const std::vector<Vec>& pts, const Vec& query,
                             double tol, int max_pivots) {
    if (pts.empty()) throw NumericalFailure("min_norm_point: empty point set");
    const int n = static_cast<int>(query.size());
    if (max_pivots <= 0) max_pivots = 200 + 50 * n + static_cast<int>(pts.size());

    std::vector<Vec> z(pts.size());
    double sc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        z[i] = sub(pts[i], query);
        sc = std::max(sc, norm2(z[i]));
    }
    MinNormResult res;
    if (sc == 0.0) {
        res.point = query;
        res.support = {0};
        res.weight = {1.0};
        return res;
    }

    int start = 0;
    double best = norm2(z[0]);
    for (std::size_t i = 1; i < z.size(); ++i) {
        double d = norm2(z[i]);
        if (d < best) {
            best = d;
            start = static_cast<int>(i);
        }
    }
    std::vector<int> S{start};
    std::vector<double> lam{1.0};
    Vec x = z[start];

    const double opt_tol = tol * std::max(1.0, sc * sc);
    int pivots = 0;
    while (pivots++ < max_pivots) {
        int j = 0;
        double m = dot(x, z[0]);
        for (std::size_t i = 1; i < z.size(); ++i) {
            double v = dot(x, z[i]);
            if (v < m) {
                m = v;
                j = static_cast<int>(i);
            }
        }
        if (m >= dot(x, x) - opt_tol) break;
        if (std::find(S.begin(), S.end(), j) != S.end()) break; // numerical stall at optimum
        S.push_back(j);
        lam.push_back(0.0);

        for (int minor = 0; minor < max_pivots; ++minor) {
            std::vector<double> alpha = affine_min_norm(z, S);
            double amin = *std::min_element(alpha.begin(), alpha.end());
            if (amin >= -1e-12) {
                lam = alpha;
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < S.size(); ++i)
                if (alpha[i] < 1e-14 && lam[i] > alpha[i])
                    theta = std::min(theta, lam[i] / (lam[i] - alpha[i]));
            for (std::size_t i = 0; i < S.size(); ++i)
                lam[i] = (1.0 - theta) * lam[i] + theta * alpha[i];
            std::vector<int> keepS;
            std::vector<double> keepL;
            double dropped = 2.0;
            std::size_t drop_at = S.size();
            for (std::size_t i = 0; i < S.size(); ++i)
                if (lam[i] < dropped) {
                    dropped = lam[i];
                    drop_at = i;
                }
            for (std::size_t i = 0; i < S.size(); ++i) {
                if (lam[i] <= 1e-12 && (i == drop_at || lam[i] <= 0.0)) continue;
                keepS.push_back(S[i]);
                keepL.push_back(std::max(lam[i], 0.0));
            }
            if (keepS.empty()) {
                keepS.push_back(S[drop_at == 0 ? 1 : 0]);
                keepL.push_back(1.0);
            }
            S = std::move(keepS);
            lam = std::move(keepL);
        }
        double tot = 0.0;
        for (double l : lam) tot += l;
        for (double& l : lam) l /= tot;
        x = zeros(n);
        for (std::size_t i = 0; i < S.size(); ++i) axpy(lam[i], z[S[i]], x);
    }
    if (pivots > max_pivots)
        throw NumericalFailure("min_norm_point: pivot budget exhausted, projection not converged");

    res.point = add(x, query);
    res.distance = norm2(x);
    res.support = S;
    res.weight = lam;
    res.pivots = pivots;
    return res;
}

double distance_to_hull(const std::vector<Vec>& pts, const Vec& query) {
    return min_norm_point(pts, query).distance;
}

Separator separating_hyperplane(const Vec& x, const std::vector<Vec>& others,
                                double min_clearance) {
    MinNormResult r = min_norm_point(others, x);
    if (r.distance <= min_clearance)
        throw SeparationFailure("no strict separator: point is not extreme");
    Vec u = scale(sub(x, r.point), 1.0 / r.distance);
    // projection property: <u, y> <= <u, proj> for all y in the hull
    Separator s;
    s.normal = u;
    s.offset = dot(u, r.point) + 0.5 * r.distance;
    s.clearance = r.distance;
    return s;
}

} // namespace pa

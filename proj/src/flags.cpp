#include "polyapprox/flags.hpp"

#include <algorithm>
#include <cmath>

#include "polyapprox/errors.hpp"
#include "polyapprox/geometry.hpp"
#include "polyapprox/minnorm.hpp"

namespace pa {

long long flag_via_lattice(const VPolytope& p) {
    if (p.dim > 5) throw OutOfRange("flag_via_lattice: dim capped at 5");
    FaceLattice L = face_lattice(p);
    std::vector<std::vector<long long>> chains(L.faces.size());
    chains[0].assign(L.faces[0].size(), 1);
    for (int k = 1; k < L.dim; ++k) {
        chains[k].assign(L.faces[k].size(), 0);
        for (std::size_t i = 0; i < L.faces[k].size(); ++i)
            for (int sub : L.subfaces[k][i]) chains[k][i] += chains[k - 1][sub];
    }
    long long total = 0;
    for (long long c : chains[L.dim - 1]) total += c;
    return total;
}

namespace {

// orthonormal basis of the hyperplane {<u,x> = const}
std::vector<Vec> hyperplane_basis(const Vec& u) {
    const int n = static_cast<int>(u.size());
    std::vector<Vec> cands;
    for (int k = 0; k < n; ++k) cands.push_back(unit(n, k));
    std::vector<Vec> basis;
    for (auto& c : cands) {
        Vec w = c;
        axpy(-dot(w, u), u, w);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) axpy(-dot(w, b), b, w);
        double nn = norm2(w);
        if (nn > 1e-8) basis.push_back(scale(w, 1.0 / nn));
        if (static_cast<int>(basis.size()) == n - 1) break;
    }
    if (static_cast<int>(basis.size()) != n - 1)
        throw NumericalFailure("hyperplane_basis: rank deficiency");
    return basis;
}

bool validate_separator(const Vec& u, double offset, const Vec& x,
                        const std::vector<Vec>& others, double tol) {
    if (dot(u, x) - offset <= tol) return false;
    for (const auto& v : others)
        if (offset - dot(u, v) <= tol) return false;
    return true;
}

long long phi_rec(const std::vector<Vec>& pts, int n);
long long psi_rec(const std::vector<Vec>& pts, int n);

long long phi_rec(const std::vector<Vec>& pts, int n) {
    if (n == 1) {
        // a 1-polytope has exactly two flags
        double lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        if (hi - lo <= 0.0) throw DegenerateInput("phi: degenerate segment");
        return 2;
    }
    VPolytope P = convex_hull(pts, n);
    double diam = std::max(P.diameter, 1e-30);
    auto E = edges(P);
    long long total = 0;
    for (std::size_t vi = 0; vi < P.vertices.size(); ++vi) {
        const Vec& x = P.vertices[vi];
        std::vector<Vec> others;
        for (std::size_t j = 0; j < P.vertices.size(); ++j)
            if (j != vi) others.push_back(P.vertices[j]);

        // midpoint hyperplane toward the nearest vertex first, guaranteed
        // projection-based separator as the fallback
        Vec u;
        double offset = 0.0;
        bool ok = false;
        {
            double best = 1e300;
            std::size_t near = 0;
            for (std::size_t j = 0; j < others.size(); ++j) {
                double d = dist(others[j], x);
                if (d < best) {
                    best = d;
                    near = j;
                }
            }
            Vec cand = sub(x, others[near]);
            double nn = norm2(cand);
            if (nn > 0.0) {
                cand = scale(cand, 1.0 / nn);
                double off = dot(cand, scale(add(x, others[near]), 0.5));
                if (validate_separator(cand, off, x, others, 1e-12 * diam)) {
                    u = cand;
                    offset = off;
                    ok = true;
                }
            }
        }
        if (!ok) {
            Separator s = separating_hyperplane(x, others, 1e-10 * diam);
            if (!validate_separator(s.normal, s.offset, x, others, 1e-12 * diam)) {
                // shrink the offset toward the vertex and re-validate
                double off = dot(s.normal, x) - 0.25 * s.clearance;
                if (!validate_separator(s.normal, off, x, others, 1e-12 * diam))
                    throw SeparationFailure("flag_phi: no validated strict separator");
                s.offset = off;
            }
            u = s.normal;
            offset = s.offset;
        }

        // vertex figure: crossings of the edges incident to x
        std::vector<Vec> crossings;
        for (auto [a, b] : E) {
            if (a != static_cast<int>(vi) && b != static_cast<int>(vi)) continue;
            const Vec& y = P.vertices[a == static_cast<int>(vi) ? b : a];
            double sx = dot(u, x) - offset, sy = dot(u, y) - offset;
            if (sy >= 0.0) throw SeparationFailure("flag_phi: neighbor on wrong side");
            double t = sx / (sx - sy);
            crossings.push_back(add(x, scale(sub(y, x), t)));
        }
        std::vector<Vec> basis = hyperplane_basis(u);
        Vec origin = crossings[0];
        std::vector<Vec> embedded;
        for (const auto& c : crossings) embedded.push_back(embed(c, origin, basis));
        total += phi_rec(embedded, n - 1);
    }
    return total;
}

long long psi_rec(const std::vector<Vec>& pts, int n) {
    if (n == 1) {
        double lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        if (hi - lo <= 0.0) throw DegenerateInput("psi: degenerate segment");
        return 2;
    }
    VPolytope P = convex_hull(pts, n);
    long long total = 0;
    for (const auto& f : merged_facets(P)) {
        std::vector<Vec> basis = hyperplane_basis(f.normal);
        Vec origin = P.vertices[f.vertices[0]];
        std::vector<Vec> embedded;
        for (int v : f.vertices) embedded.push_back(embed(P.vertices[v], origin, basis));
        total += psi_rec(embedded, n - 1);
    }
    return total;
}

} // namespace

long long flag_phi(const VPolytope& p) {
    if (p.dim > 5) throw OutOfRange("flag_phi: dim capped at 5");
    return phi_rec(p.vertices, p.dim);
}

long long flag_psi(const VPolytope& p) {
    if (p.dim > 5) throw OutOfRange("flag_psi: dim capped at 5");
    return psi_rec(p.vertices, p.dim);
}

FlagReport compute_flags(const VPolytope& p) {
    FlagReport r;
    r.flag_lattice = flag_via_lattice(p);
    r.flag_phi = flag_phi(p);
    r.flag_psi = flag_psi(p);
    r.methods_agree = (r.flag_lattice == r.flag_phi) && (r.flag_phi == r.flag_psi);
    return r;
}

std::pair<double, double> flag_constants(long long flag, int n) {
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    double fact1 = fact / n; // (n-1)!
    double c_float = static_cast<double>(flag) / (fact * std::pow(n, n - 1.0));
    double c_random = static_cast<double>(flag) / (std::pow(n + 1.0, n - 1.0) * fact1);
    return {c_float, c_random};
}

std::pair<double, double> flag_constants(const VPolytope& p) {
    return flag_constants(flag_via_lattice(p), p.dim);
}

} // namespace pa

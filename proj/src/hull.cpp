#include "polyapprox/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polyapprox/errors.hpp"
#include "polyapprox/minnorm.hpp"
#include "polyapprox/rng.hpp"

namespace pa {

bool VPolytope::contains(const Vec& x, double tol) const {
    double t = tol * std::max(diameter, 1.0);
    for (const auto& f : sfacets)
        if (dot(f.normal, x) - f.offset > t) return false;
    return true;
}

namespace {

struct PlaneDegenerate {};

// Hyperplane through `pts` oriented away from `ref`. Throws PlaneDegenerate
// when the points are affinely dependent or ref sits on the plane.
std::pair<Vec, double> facet_plane(const std::vector<Vec>& pts, const Vec& ref,
                                   double side_tol) {
    const int n = static_cast<int>(pts[0].size());
    std::vector<Vec> edges;
    for (std::size_t i = 1; i < pts.size(); ++i) edges.push_back(sub(pts[i], pts[0]));
    std::vector<Vec> basis = orthonormal_basis(edges, 1e-9);
    if (static_cast<int>(basis.size()) != n - 1) throw PlaneDegenerate{};

    Vec normal;
    double best = 0.0;
    std::vector<Vec> candidates;
    candidates.push_back(sub(pts[0], ref));
    for (int k = 0; k < n; ++k) candidates.push_back(unit(n, k));
    for (auto& c : candidates) {
        Vec w = c;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) axpy(-dot(w, b), b, w);
        double nn = norm2(w);
        if (nn > best) {
            best = nn;
            normal = scale(w, 1.0 / nn);
        }
    }
    if (best < 1e-10) throw PlaneDegenerate{};
    double offset = 0.0;
    for (const auto& p : pts) offset += dot(normal, p);
    offset /= static_cast<double>(pts.size());
    double side = dot(normal, ref) - offset;
    if (std::fabs(side) < side_tol) throw PlaneDegenerate{};
    if (side > 0.0) {
        normal = scale(normal, -1.0);
        offset = -offset;
    }
    return {normal, offset};
}

struct BFacet {
    std::vector<int> vtx;
    Vec normal;
    double offset = 0.0;
    std::vector<int> neighbors;
    std::vector<int> outside;
    int far_point = -1;
    double far_dist = 0.0;
    bool alive = true;
    int visit = 0;
};

struct HullCombinatorics {
    std::vector<BFacet> facets;
    Vec ref;
};

// Core incremental hull on pre-normalized points (quickhull insertion order,
// outside-set partitioning). Throws PlaneDegenerate to request a joggle
// retry, DegenerateInput for genuinely flat input.
HullCombinatorics build_hull(const std::vector<Vec>& q, int n, double tol_vis) {
    const int npts = static_cast<int>(q.size());

    std::vector<int> simplex;
    {
        int first = 0;
        for (int i = 1; i < npts; ++i)
            if (q[i] < q[first]) first = i;
        simplex.push_back(first);
        std::vector<Vec> basis;
        Vec origin = q[first];
        for (int k = 0; k < n; ++k) {
            int best = -1;
            double bestd = 0.0;
            Vec bestw;
            for (int i = 0; i < npts; ++i) {
                Vec w = sub(q[i], origin);
                for (const auto& b : basis) axpy(-dot(w, b), b, w);
                double d = norm2(w);
                if (d > bestd) {
                    bestd = d;
                    best = i;
                    bestw = w;
                }
            }
            if (best < 0 || bestd < 1e-10)
                throw DegenerateInput("points are affinely dependent: hull is not full-dimensional");
            simplex.push_back(best);
            basis.push_back(scale(bestw, 1.0 / bestd));
        }
    }

    HullCombinatorics hc;
    hc.ref = zeros(n);
    for (int idx : simplex) axpy(1.0 / (n + 1.0), q[idx], hc.ref);

    for (int k = 0; k <= n; ++k) {
        BFacet f;
        for (int i = 0; i <= n; ++i)
            if (i != k) f.vtx.push_back(simplex[i]);
        std::vector<Vec> pts;
        for (int idx : f.vtx) pts.push_back(q[idx]);
        auto [nor, off] = facet_plane(pts, hc.ref, 1e-12);
        f.normal = nor;
        f.offset = off;
        f.neighbors.assign(f.vtx.size(), -1);
        hc.facets.push_back(std::move(f));
    }
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            if (a == b) continue;
            for (std::size_t s = 0; s < hc.facets[a].vtx.size(); ++s)
                if (hc.facets[a].vtx[s] == simplex[b]) hc.facets[a].neighbors[s] = b;
        }

    // each point outside the current hull lives in exactly one outside set
    auto partition = [&](int pt, const std::vector<int>& candidates) {
        for (int fi : candidates) {
            BFacet& f = hc.facets[fi];
            if (!f.alive) continue;
            double d = dot(f.normal, q[pt]) - f.offset;
            if (d > tol_vis) {
                f.outside.push_back(pt);
                if (d > f.far_dist) {
                    f.far_dist = d;
                    f.far_point = pt;
                }
                return;
            }
        }
    };

    {
        std::vector<int> all_facets;
        for (std::size_t fi = 0; fi < hc.facets.size(); ++fi)
            all_facets.push_back(static_cast<int>(fi));
        std::vector<char> in_simplex(npts, 0);
        for (int idx : simplex) in_simplex[idx] = 1;
        for (int i = 0; i < npts; ++i)
            if (!in_simplex[i]) partition(i, all_facets);
    }

    int visit_stamp = 0;
    std::vector<int> pending;
    for (std::size_t fi = 0; fi < hc.facets.size(); ++fi)
        if (!hc.facets[fi].outside.empty()) pending.push_back(static_cast<int>(fi));

    while (!pending.empty()) {
        int seed = pending.back();
        pending.pop_back();
        if (!hc.facets[seed].alive || hc.facets[seed].outside.empty()) continue;
        int apex = hc.facets[seed].far_point;
        const Vec ap = q[apex];

        ++visit_stamp;
        std::vector<int> visible{seed};
        hc.facets[seed].visit = visit_stamp;
        struct HorizonEntry {
            std::vector<int> ridge;
            int outer;
        };
        std::vector<HorizonEntry> horizon;
        for (std::size_t h = 0; h < visible.size(); ++h) {
            const BFacet& f = hc.facets[visible[h]];
            for (std::size_t s = 0; s < f.vtx.size(); ++s) {
                int g = f.neighbors[s];
                BFacet& gf = hc.facets[g];
                if (gf.visit == visit_stamp) continue;
                double d = dot(gf.normal, ap) - gf.offset;
                if (d > tol_vis) {
                    gf.visit = visit_stamp;
                    visible.push_back(g);
                } else {
                    HorizonEntry hz;
                    for (std::size_t t = 0; t < f.vtx.size(); ++t)
                        if (t != s) hz.ridge.push_back(f.vtx[t]);
                    hz.outer = g;
                    horizon.push_back(std::move(hz));
                }
            }
        }

        std::vector<int> orphan;
        for (int v : visible) {
            hc.facets[v].alive = false;
            for (int pt : hc.facets[v].outside)
                if (pt != apex) orphan.push_back(pt);
            hc.facets[v].outside.clear();
            hc.facets[v].far_point = -1;
            hc.facets[v].far_dist = 0.0;
        }

        std::map<std::vector<int>, std::pair<int, int>> ridge_map;
        std::vector<int> created;
        for (const auto& hz : horizon) {
            BFacet nf;
            nf.vtx.push_back(apex);
            for (int v : hz.ridge) nf.vtx.push_back(v);
            std::vector<Vec> pts;
            for (int idx : nf.vtx) pts.push_back(q[idx]);
            auto [nor, off] = facet_plane(pts, hc.ref, 1e-12);
            nf.normal = nor;
            nf.offset = off;
            nf.neighbors.assign(nf.vtx.size(), -1);
            int nfi = static_cast<int>(hc.facets.size());
            nf.neighbors[0] = hz.outer;
            BFacet& out = hc.facets[hz.outer];
            std::vector<int> hzr = hz.ridge;
            std::sort(hzr.begin(), hzr.end());
            for (std::size_t s = 0; s < out.vtx.size(); ++s) {
                int old = out.neighbors[s];
                if (old < 0 || hc.facets[old].alive) continue;
                std::vector<int> r;
                for (std::size_t t = 0; t < out.vtx.size(); ++t)
                    if (t != s) r.push_back(out.vtx[t]);
                std::sort(r.begin(), r.end());
                if (r == hzr) out.neighbors[s] = nfi;
            }
            for (std::size_t s = 1; s < nf.vtx.size(); ++s) {
                std::vector<int> key;
                for (std::size_t t = 1; t < nf.vtx.size(); ++t)
                    if (t != s) key.push_back(nf.vtx[t]);
                std::sort(key.begin(), key.end());
                auto it = ridge_map.find(key);
                if (it == ridge_map.end()) {
                    ridge_map[key] = {nfi, static_cast<int>(s)};
                } else {
                    nf.neighbors[s] = it->second.first;
                    hc.facets[it->second.first].neighbors[it->second.second] = nfi;
                }
            }
            created.push_back(nfi);
            hc.facets.push_back(std::move(nf));
        }
        if (created.empty()) throw PlaneDegenerate{};
        for (int c : created)
            for (int g : hc.facets[c].neighbors)
                if (g < 0) throw PlaneDegenerate{};

        for (int pt : orphan) partition(pt, created);
        for (int c : created)
            if (!hc.facets[c].outside.empty()) pending.push_back(c);
    }

    for (std::size_t fi = 0; fi < hc.facets.size(); ++fi) {
        const BFacet& f = hc.facets[fi];
        if (!f.alive) continue;
        for (int g : f.neighbors)
            if (g < 0 || !hc.facets[g].alive) throw PlaneDegenerate{};
    }
    return hc;
}

VPolytope finalize(const std::vector<Vec>& original, const HullCombinatorics& hc,
                   const Vec& center, double sc) {
    const int n = static_cast<int>(original[0].size());
    VPolytope P;
    P.dim = n;

    std::vector<int> vmap(original.size(), -1);
    std::vector<int> vert_ids;
    for (const auto& f : hc.facets) {
        if (!f.alive) continue;
        for (int v : f.vtx)
            if (vmap[v] < 0) {
                vmap[v] = 0;
                vert_ids.push_back(v);
            }
    }
    std::sort(vert_ids.begin(), vert_ids.end());
    for (std::size_t i = 0; i < vert_ids.size(); ++i) vmap[vert_ids[i]] = static_cast<int>(i);
    for (int id : vert_ids) P.vertices.push_back(original[id]);

    P.interior = zeros(n);
    for (const auto& v : P.vertices) axpy(1.0 / P.vertices.size(), v, P.interior);
    P.diameter = 0.0;
    for (const auto& v : P.vertices) P.diameter = std::max(P.diameter, 2.0 * dist(v, P.interior));

    std::vector<int> facet_new_id(hc.facets.size(), -1);
    int fid = 0;
    for (std::size_t i = 0; i < hc.facets.size(); ++i)
        if (hc.facets[i].alive) facet_new_id[i] = fid++;

    for (std::size_t i = 0; i < hc.facets.size(); ++i) {
        const auto& f = hc.facets[i];
        if (!f.alive) continue;
        SimplicialFacet sf;
        for (int v : f.vtx) sf.vtx.push_back(vmap[v]);
        for (int g : f.neighbors) sf.neighbors.push_back(facet_new_id[g]);
        try {
            std::vector<Vec> pts;
            for (int v : f.vtx) pts.push_back(original[v]);
            auto [nor, off] = facet_plane(pts, P.interior, 1e-14);
            sf.normal = nor;
            sf.offset = off;
        } catch (const PlaneDegenerate&) {
            // original points are flat on this (joggled) facet: keep the
            // de-normalized working plane
            sf.normal = f.normal;
            sf.offset = f.offset * sc + dot(f.normal, center);
        }
        P.sfacets.push_back(std::move(sf));
    }
    return P;
}

bool certify_extreme(const VPolytope& P, int vi) {
    Vec u = zeros(P.dim);
    for (const auto& f : P.sfacets)
        if (std::find(f.vtx.begin(), f.vtx.end(), vi) != f.vtx.end()) axpy(1.0, f.normal, u);
    double nn = norm2(u);
    if (nn < 1e-12) return false;
    u = scale(u, 1.0 / nn);
    double self = dot(u, P.vertices[vi]);
    double other = -1e300;
    for (std::size_t j = 0; j < P.vertices.size(); ++j)
        if (static_cast<int>(j) != vi) other = std::max(other, dot(u, P.vertices[j]));
    return self > other + 1e-9 * std::max(P.diameter, 1.0);
}

double cross2(const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

VPolytope polygon_from_ccw(const std::vector<Vec>& ring) {
    VPolytope P;
    P.dim = 2;
    P.vertices = ring;
    const int k = static_cast<int>(ring.size());
    P.interior = zeros(2);
    for (const auto& v : ring) axpy(1.0 / k, v, P.interior);
    P.diameter = 0.0;
    for (const auto& v : ring) P.diameter = std::max(P.diameter, 2.0 * dist(v, P.interior));
    for (int i = 0; i < k; ++i) {
        int j = (i + 1) % k;
        SimplicialFacet f;
        f.vtx = {i, j};
        Vec e = sub(ring[j], ring[i]);
        Vec nor = normalized(Vec{e[1], -e[0]});
        f.normal = nor;
        f.offset = dot(nor, ring[i]);
        f.neighbors = {(i + 1) % k, (i + k - 1) % k};
        P.sfacets.push_back(std::move(f));
    }
    return P;
}

VPolytope hull_2d(const std::vector<Vec>& points) {
    double sc = 0.0;
    Vec center = zeros(2);
    for (const auto& p : points) axpy(1.0 / points.size(), p, center);
    for (const auto& p : points) sc = std::max(sc, dist(p, center));
    if (sc == 0.0) throw DegenerateInput("convex_hull: all points coincide");
    const double eps = 1e-12 * sc * sc;

    std::vector<Vec> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int m = static_cast<int>(pts.size());
    if (m < 3) throw DegenerateInput("convex_hull: fewer than 3 distinct points");

    std::vector<Vec> lower, upper;
    for (int i = 0; i < m; ++i) {
        while (lower.size() >= 2 && cross2(lower[lower.size() - 2], lower.back(), pts[i]) <= eps)
            lower.pop_back();
        lower.push_back(pts[i]);
    }
    for (int i = m - 1; i >= 0; --i) {
        while (upper.size() >= 2 && cross2(upper[upper.size() - 2], upper.back(), pts[i]) <= eps)
            upper.pop_back();
        upper.push_back(pts[i]);
    }
    lower.pop_back();
    upper.pop_back();
    std::vector<Vec> ring = lower;
    ring.insert(ring.end(), upper.begin(), upper.end());
    if (ring.size() < 3)
        throw DegenerateInput("points are affinely dependent: hull is not full-dimensional");
    return polygon_from_ccw(ring);
}

} // namespace

// polygon assembly from an ordered CCW boundary, shared with geometry.cpp
VPolytope polygon_polytope(const std::vector<Vec>& ccw_ring) { return polygon_from_ccw(ccw_ring); }

VPolytope convex_hull(const std::vector<Vec>& points, int dim, HullOptions opts) {
    if (dim < 2 || dim > 6) throw OutOfRange("convex_hull: dim must be in 2..6");
    if (static_cast<int>(points.size()) < dim + 1)
        throw DegenerateInput("convex_hull: need at least dim+1 points");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != dim)
            throw ConfigError("convex_hull: point dimension mismatch");

    if (dim == 2) return hull_2d(points);

    Vec center = zeros(dim);
    for (const auto& p : points) axpy(1.0 / points.size(), p, center);
    double sc = 0.0;
    for (const auto& p : points) sc = std::max(sc, dist(p, center));
    if (sc == 0.0) throw DegenerateInput("convex_hull: all points coincide");

    std::vector<Vec> q(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) q[i] = scale(sub(points[i], center), 1.0 / sc);

    const double tol_vis = 1e-9;
    const double joggle_eps[] = {0.0, 1e-10, 3e-9, 1e-7};
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<Vec> qq = q;
        if (attempt > 0) {
            Rng rng(0xC0FFEEULL + attempt, 17);
            for (auto& p : qq)
                for (auto& x : p) x += joggle_eps[attempt] * (rng.uniform01() - 0.5);
        }
        try {
            HullCombinatorics hc = build_hull(qq, dim, tol_vis);
            double check_tol = 1e-8 + 3.0 * joggle_eps[attempt];
            for (const auto& f : hc.facets) {
                if (!f.alive) continue;
                for (const auto& p : qq)
                    if (dot(f.normal, p) - f.offset > check_tol) throw PlaneDegenerate{};
            }
            VPolytope P = finalize(points, hc, center, sc);
            if (opts.strict_extremality) {
                std::vector<int> keep;
                for (std::size_t i = 0; i < P.vertices.size(); ++i) {
                    if (certify_extreme(P, static_cast<int>(i))) {
                        keep.push_back(static_cast<int>(i));
                        continue;
                    }
                    std::vector<Vec> others;
                    for (std::size_t j = 0; j < P.vertices.size(); ++j)
                        if (j != i) others.push_back(P.vertices[j]);
                    if (distance_to_hull(others, P.vertices[i]) > 1e-9 * std::max(P.diameter, 1.0))
                        keep.push_back(static_cast<int>(i));
                }
                if (keep.size() != P.vertices.size()) {
                    std::vector<Vec> reduced;
                    for (int k : keep) reduced.push_back(P.vertices[k]);
                    HullOptions relaxed = opts;
                    relaxed.strict_extremality = false; // survivors are certified
                    return convex_hull(reduced, dim, relaxed);
                }
            }
            return P;
        } catch (const PlaneDegenerate&) {
            continue;
        }
    }
    throw NumericalFailure("convex_hull: degeneracy persisted through joggle retries");
}

} // namespace pa

#include "polyapprox/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "polyapprox/errors.hpp"
#include "polyapprox/minnorm.hpp"

namespace pa {

double shoelace_area(const std::vector<Vec>& ring) {
    double s = 0.0;
    const int k = static_cast<int>(ring.size());
    for (int i = 0; i < k; ++i) {
        int j = (i + 1) % k;
        s += ring[i][0] * ring[j][1] - ring[j][0] * ring[i][1];
    }
    return 0.5 * s;
}

double volume(const VPolytope& p) {
    const int n = p.dim;
    if (n == 2) {
        // vertices are stored CCW in the 2D path; fall through to the
        // triangulation when they are not (clip/polar byproducts keep order)
        return std::fabs(shoelace_area(p.vertices));
    }
    double total = 0.0;
    Mat m(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n)));
    for (const auto& f : p.sfacets) {
        for (int i = 0; i < n; ++i)
            m[i] = sub(p.vertices[f.vtx[i]], p.interior);
        total += std::fabs(det(m));
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return total / fact;
}

Vec centroid(const VPolytope& p) {
    const int n = p.dim;
    Mat m(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n)));
    Vec c = zeros(n);
    double total = 0.0;
    for (const auto& f : p.sfacets) {
        Vec simplex_centroid = p.interior;
        for (int i = 0; i < n; ++i) {
            m[i] = sub(p.vertices[f.vtx[i]], p.interior);
            simplex_centroid = add(simplex_centroid, p.vertices[f.vtx[i]]);
        }
        double v = std::fabs(det(m));
        total += v;
        axpy(v / (n + 1.0), simplex_centroid, c);
    }
    if (total == 0.0) throw DegenerateInput("centroid: zero volume");
    return scale(c, 1.0 / total);
}

std::vector<MergedFacet> merged_facets(const VPolytope& p) {
    const double ntol = 1e-9;
    const double otol = 1e-9 * std::max(p.diameter, 1.0);
    std::vector<int> group(p.sfacets.size(), -1);
    std::vector<MergedFacet> out;
    // flood over coplanar adjacency
    for (std::size_t i = 0; i < p.sfacets.size(); ++i) {
        if (group[i] >= 0) continue;
        int gid = static_cast<int>(out.size());
        std::vector<std::size_t> stack{i};
        group[i] = gid;
        std::vector<std::size_t> members;
        while (!stack.empty()) {
            std::size_t f = stack.back();
            stack.pop_back();
            members.push_back(f);
            for (int g : p.sfacets[f].neighbors) {
                if (group[g] >= 0) continue;
                if (dot(p.sfacets[f].normal, p.sfacets[g].normal) > 1.0 - ntol &&
                    std::fabs(p.sfacets[f].offset - p.sfacets[g].offset) < otol) {
                    group[g] = gid;
                    stack.push_back(static_cast<std::size_t>(g));
                }
            }
        }
        MergedFacet mf;
        Vec nsum = zeros(p.dim);
        for (std::size_t f : members) axpy(1.0, p.sfacets[f].normal, nsum);
        mf.normal = normalized(nsum);
        double osum = 0.0;
        int cnt = 0;
        for (std::size_t f : members)
            for (int v : p.sfacets[f].vtx) {
                osum += dot(mf.normal, p.vertices[v]);
                ++cnt;
            }
        mf.offset = osum / cnt;
        out.push_back(std::move(mf));
    }
    // complete vertex sets by an on-plane sweep
    for (auto& mf : out) {
        for (std::size_t v = 0; v < p.vertices.size(); ++v)
            if (std::fabs(dot(mf.normal, p.vertices[v]) - mf.offset) < 10.0 * otol)
                mf.vertices.push_back(static_cast<int>(v));
        std::sort(mf.vertices.begin(), mf.vertices.end());
    }
    return out;
}

std::vector<Halfspace> facet_halfspaces(const VPolytope& p) {
    std::vector<Halfspace> hs;
    for (const auto& mf : merged_facets(p)) hs.push_back({mf.normal, mf.offset});
    return hs;
}

HPolytope to_hpolytope(const VPolytope& p) {
    HPolytope h;
    h.dim = p.dim;
    h.halfspaces = facet_halfspaces(p);
    h.bounded = true;
    return h;
}

FaceLattice face_lattice(const VPolytope& p) {
    const int n = p.dim;
    if (n > 6) throw OutOfRange("face_lattice: dim capped at 6");
    auto mfs = merged_facets(p);

    FaceLattice L;
    L.dim = n;
    L.faces.assign(static_cast<std::size_t>(n), {});
    L.subfaces.assign(static_cast<std::size_t>(n), {});

    for (const auto& mf : mfs) L.faces[static_cast<std::size_t>(n - 1)].push_back(mf.vertices);

    for (int k = n - 1; k >= 1; --k) {
        auto& level = L.faces[static_cast<std::size_t>(k)];
        std::map<std::vector<int>, int> next_index;
        L.subfaces[static_cast<std::size_t>(k)].assign(level.size(), {});
        for (std::size_t fi = 0; fi < level.size(); ++fi) {
            const std::vector<int>& fv = level[fi];
            std::set<std::vector<int>> seen;
            for (const auto& mf : mfs) {
                std::vector<int> inter;
                std::set_intersection(fv.begin(), fv.end(), mf.vertices.begin(),
                                      mf.vertices.end(), std::back_inserter(inter));
                if (static_cast<int>(inter.size()) < k || inter == fv) continue;
                if (seen.count(inter)) continue;
                std::vector<Vec> pts;
                for (int v : inter) pts.push_back(p.vertices[v]);
                if (affine_rank(pts) != k - 1) continue;
                seen.insert(inter);
                auto it = next_index.find(inter);
                int idx;
                if (it == next_index.end()) {
                    idx = static_cast<int>(L.faces[static_cast<std::size_t>(k - 1)].size());
                    next_index[inter] = idx;
                    L.faces[static_cast<std::size_t>(k - 1)].push_back(inter);
                } else {
                    idx = it->second;
                }
                L.subfaces[static_cast<std::size_t>(k)][fi].push_back(idx);
            }
        }
    }
    // level 0 must list single vertices; replace whatever the sweep produced
    // with canonical singletons and remap incidences
    {
        auto& verts = L.faces[0];
        std::map<std::vector<int>, int> remap;
        for (std::size_t i = 0; i < verts.size(); ++i) remap[verts[i]] = static_cast<int>(i);
        bool canonical = true;
        for (const auto& f : verts)
            if (f.size() != 1) canonical = false;
        if (!canonical) throw NumericalFailure("face_lattice: spurious 0-face");
        (void)remap;
    }
    return L;
}

bool euler_relation_holds(const FaceLattice& l) {
    long long s = 0;
    int sign = 1;
    for (const auto& level : l.faces) {
        s += sign * static_cast<long long>(level.size());
        sign = -sign;
    }
    long long rhs = 1 - ((l.dim % 2 == 0) ? 1 : -1);
    return s == rhs;
}

std::vector<std::pair<int, int>> edges(const VPolytope& p) {
    if (p.dim == 2) {
        std::vector<std::pair<int, int>> e;
        const int k = static_cast<int>(p.vertices.size());
        for (int i = 0; i < k; ++i) e.push_back({i, (i + 1) % k});
        return e;
    }
    FaceLattice L = face_lattice(p);
    std::vector<std::pair<int, int>> e;
    for (const auto& f : L.faces[1]) e.push_back({f[0], f[1]});
    return e;
}

std::vector<Vec> clip_ring(const std::vector<Vec>& ring, const Halfspace& h) {
    std::vector<Vec> out;
    const int k = static_cast<int>(ring.size());
    for (int i = 0; i < k; ++i) {
        const Vec& a = ring[i];
        const Vec& b = ring[(i + 1) % k];
        double sa = h.slack(a), sb = h.slack(b);
        if (sa >= 0.0) out.push_back(a);
        if ((sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0)) {
            double t = sa / (sa - sb);
            out.push_back(add(a, scale(sub(b, a), t)));
        }
    }
    return out;
}

VPolytope clip(const VPolytope& p, const Halfspace& h) {
    if (p.dim == 2) {
        std::vector<Vec> ring = clip_ring(p.vertices, h);
        if (ring.size() < 3 || std::fabs(shoelace_area(ring)) < 1e-14 * p.diameter * p.diameter)
            throw EmptyResult("clip: intersection has no interior");
        // drop repeated points the clipping may introduce
        std::vector<Vec> clean;
        for (const auto& v : ring)
            if (clean.empty() || dist(v, clean.back()) > 1e-13 * std::max(p.diameter, 1.0))
                clean.push_back(v);
        while (clean.size() > 1 && dist(clean.front(), clean.back()) < 1e-13 * std::max(p.diameter, 1.0))
            clean.pop_back();
        if (clean.size() < 3) throw EmptyResult("clip: intersection has no interior");
        return polygon_polytope(clean);
    }

    double tol = 1e-12 * std::max(p.diameter, 1.0);
    std::vector<char> kept(p.vertices.size());
    bool all_kept = true, any_kept = false;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        kept[i] = h.slack(p.vertices[i]) >= -tol;
        all_kept = all_kept && kept[i];
        any_kept = any_kept || kept[i];
    }
    if (all_kept) return p;
    if (!any_kept) throw EmptyResult("clip: intersection has no interior");

    std::vector<Vec> candidates;
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        if (kept[i]) candidates.push_back(p.vertices[i]);
    for (auto [a, b] : edges(p)) {
        double sa = h.slack(p.vertices[a]), sb = h.slack(p.vertices[b]);
        if ((sa > tol && sb < -tol) || (sa < -tol && sb > tol)) {
            double t = sa / (sa - sb);
            candidates.push_back(add(p.vertices[a], scale(sub(p.vertices[b], p.vertices[a]), t)));
        }
    }
    try {
        return convex_hull(candidates, p.dim);
    } catch (const DegenerateInput&) {
        throw EmptyResult("clip: intersection has no interior");
    }
}

VPolytope clip(const HPolytope& p, const Halfspace& h, const Vec& interior_hint) {
    HPolytope q = p;
    q.halfspaces.push_back(h);
    return to_vpolytope(q, interior_hint);
}

double cut_volume_above(const VPolytope& p, const Vec& u, double t) {
    Halfspace below{u, t};
    double lo = dot(u, p.vertices[0]), hi = lo;
    for (const auto& v : p.vertices) {
        double s = dot(u, v);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (t <= lo) return volume(p);
    if (t >= hi) return 0.0;
    try {
        VPolytope under = clip(p, below);
        return std::max(0.0, volume(p) - volume(under));
    } catch (const EmptyResult&) {
        return volume(p);
    }
}

VPolytope polar(const VPolytope& p) {
    auto mfs = merged_facets(p);
    double tol = 1e-9 * std::max(p.diameter, 1.0);
    std::vector<Vec> dual;
    for (const auto& mf : mfs) {
        if (mf.offset <= tol) throw OriginNotInterior("polar: 0 is not strictly interior");
        dual.push_back(scale(mf.normal, 1.0 / mf.offset));
    }
    return convex_hull(dual, p.dim);
}

double distance_to_polytope(const Vec& x, const VPolytope& p) {
    return distance_to_hull(p.vertices, x);
}

double hausdorff_distance(const VPolytope& a, const VPolytope& b) {
    double d = 0.0;
    for (const auto& v : a.vertices) d = std::max(d, distance_to_polytope(v, b));
    for (const auto& v : b.vertices) d = std::max(d, distance_to_polytope(v, a));
    return d;
}

VPolytope to_vpolytope(const HPolytope& h, Vec interior) {
    const int n = h.dim;
    // feasible interior point: accept the hint when strictly inside,
    // otherwise push max-min-slack by subgradient ascent
    auto min_slack = [&](const Vec& x) {
        double m = 1e300;
        for (const auto& hs : h.halfspaces) m = std::min(m, hs.slack(x));
        return m;
    };
    double scale_hint = 0.0;
    for (const auto& hs : h.halfspaces) scale_hint = std::max(scale_hint, std::fabs(hs.offset));
    scale_hint = std::max(scale_hint, 1.0);

    if (interior.empty()) interior = zeros(n);
    if (min_slack(interior) <= 1e-12 * scale_hint) {
        Vec x = interior;
        double step = scale_hint;
        for (int it = 0; it < 2000 && min_slack(x) <= 1e-10 * scale_hint; ++it) {
            const Halfspace* worst = nullptr;
            double m = 1e300;
            for (const auto& hs : h.halfspaces) {
                double s = hs.slack(x);
                if (s < m) {
                    m = s;
                    worst = &hs;
                }
            }
            x = sub(x, scale(worst->normal, step)); // move inward along -normal
            if (it % 50 == 49) step *= 0.5;
        }
        if (min_slack(x) <= 1e-10 * scale_hint)
            throw EmptyResult("to_vpolytope: no interior point found (empty or degenerate)");
        interior = x;
    }

    // dualize about the interior point: vertices of the intersection are the
    // facet planes of the dual hull
    std::vector<Vec> dualpts;
    for (const auto& hs : h.halfspaces) {
        double t = hs.offset - dot(hs.normal, interior);
        if (t <= 0.0) throw NumericalFailure("to_vpolytope: interior point not strictly feasible");
        dualpts.push_back(scale(hs.normal, 1.0 / t));
    }
    VPolytope dual = convex_hull(dualpts, n, HullOptions{false});
    std::vector<Vec> verts;
    for (const auto& mf : merged_facets(dual)) {
        if (mf.offset <= 1e-12) throw NumericalFailure("to_vpolytope: unbounded direction");
        verts.push_back(add(scale(mf.normal, 1.0 / mf.offset), interior));
    }
    return convex_hull(verts, n);
}

} // namespace pa

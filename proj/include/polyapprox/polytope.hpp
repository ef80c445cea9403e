#pragma once

#include <vector>

#include "polyapprox/linalg.hpp"

namespace pa {

// {x : <normal, x> <= offset}, normal has unit length.
struct Halfspace {
    Vec normal;
    double offset = 0.0;

    double slack(const Vec& x) const { return offset - dot(normal, x); }
};

// One simplicial piece of the triangulated boundary. True (merged) facets are
// recovered on demand by grouping coplanar pieces.
struct SimplicialFacet {
    std::vector<int> vtx;        // dim vertex indices
    Vec normal;                  // unit outward
    double offset = 0.0;         // <normal, x> = offset on the plane
    std::vector<int> neighbors;  // neighbors[i] shares the ridge vtx \ {vtx[i]}
};

struct MergedFacet {
    Vec normal;
    double offset = 0.0;
    std::vector<int> vertices;   // all polytope vertices on the facet plane, sorted
};

// Graded face lattice: faces[k] lists k-faces as sorted vertex-index sets for
// k = 0..dim-1; subfaces[k][i] indexes the (k-1)-faces contained in face i.
struct FaceLattice {
    int dim = 0;
    std::vector<std::vector<std::vector<int>>> faces;
    std::vector<std::vector<std::vector<int>>> subfaces;

    std::vector<int> f_vector() const {
        std::vector<int> f;
        for (const auto& level : faces) f.push_back(static_cast<int>(level.size()));
        return f;
    }
};

// Full-dimensional polytope in vertex representation. Instances are built by
// convex_hull and are immutable afterwards; all operations are free functions.
struct VPolytope {
    int dim = 0;
    std::vector<Vec> vertices;               // irredundant, extreme points
    std::vector<SimplicialFacet> sfacets;    // triangulated boundary
    Vec interior;                            // strictly interior point
    double diameter = 0.0;                   // scale used for relative tolerances

    bool contains(const Vec& x, double tol = 1e-9) const;
};

struct HPolytope {
    int dim = 0;
    std::vector<Halfspace> halfspaces;
    bool bounded = true;

    bool contains(const Vec& x, double tol = 1e-9) const {
        for (const auto& h : halfspaces)
            if (h.slack(x) < -tol) return false;
        return true;
    }
};

struct HullOptions {
    // When set, every reported vertex is certified extreme (midpoints of
    // edges/facets introduced by degenerate inputs are filtered out). The
    // relaxed mode is what the Monte Carlo loops use: volumes are unaffected
    // by tolerance-level vertex slack and the filter would dominate runtime.
    bool strict_extremality = true;
};

// Incremental convex hull with facet visibility, dim 2..6. Throws
// DegenerateInput when the points are affinely dependent. Falls back to a
// deterministic joggle when an orientation predicate degenerates.
VPolytope convex_hull(const std::vector<Vec>& points, int dim, HullOptions opts = {});

// Assemble a polygon VPolytope from an already-ordered CCW vertex ring.
VPolytope polygon_polytope(const std::vector<Vec>& ccw_ring);

// Merged (true) facets: coplanar simplicial pieces grouped, vertex sets
// completed by an on-plane sweep.
std::vector<MergedFacet> merged_facets(const VPolytope& p);

std::vector<Halfspace> facet_halfspaces(const VPolytope& p);

HPolytope to_hpolytope(const VPolytope& p);

// Vertex representation of a bounded halfspace intersection. `interior` must
// be strictly feasible; pass an empty Vec to have one searched for
// (Chebyshev-style subgradient ascent). Throws EmptyResult when infeasible.
VPolytope to_vpolytope(const HPolytope& h, Vec interior = {});

} // namespace pa

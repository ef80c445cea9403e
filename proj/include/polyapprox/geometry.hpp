#pragma once

#include "polyapprox/polytope.hpp"

namespace pa {

// Lebesgue volume by triangulation of the simplicial boundary against the
// interior point. Exact up to roundoff for dim <= 6.
double volume(const VPolytope& p);

// Shoelace area of a CCW polygon ring (2D oracle path).
double shoelace_area(const std::vector<Vec>& ring);

// Complete graded face lattice (faces of dimension 0..dim-1).
FaceLattice face_lattice(const VPolytope& p);

// Signed Euler characteristic check: sum (-1)^i f_i == 1 - (-1)^n.
bool euler_relation_holds(const FaceLattice& l);

// Edges (1-faces) as vertex index pairs.
std::vector<std::pair<int, int>> edges(const VPolytope& p);

// P cut by {<normal,x> <= offset}. Returns P unchanged when the halfspace
// contains it; throws EmptyResult when the intersection has no interior.
VPolytope clip(const VPolytope& p, const Halfspace& h);
VPolytope clip(const HPolytope& p, const Halfspace& h, const Vec& interior_hint = {});

// Volume of P beyond the hyperplane: vol(P cap {<u,x> >= t}).
double cut_volume_above(const VPolytope& p, const Vec& u, double t);

// Polar dual P° = {y : <x,y> <= 1 for all x in P}; 0 must be strictly
// interior (OriginNotInterior otherwise).
VPolytope polar(const VPolytope& p);

// Exact Hausdorff distance between convex polytopes (vertex-to-polytope
// projections, symmetrized).
double hausdorff_distance(const VPolytope& a, const VPolytope& b);

double distance_to_polytope(const Vec& x, const VPolytope& p);

// Centroid (volume barycenter) from the facet triangulation.
Vec centroid(const VPolytope& p);

// Sutherland-Hodgman clip of a CCW polygon ring; returns the clipped ring
// (possibly empty).
std::vector<Vec> clip_ring(const std::vector<Vec>& ring, const Halfspace& h);

} // namespace pa

#pragma once

#include <vector>

#include "polyapprox/bodies.hpp"
#include "polyapprox/stats.hpp"

namespace pa {

// K_delta: the intersection of all halfspaces whose complements cut volume
// delta off K. Exact for balls (and ellipsoids through the affine image);
// otherwise a supporting-cut construction over a direction set.
struct FloatingBodyResult {
    double delta = 0.0;
    bool exact_ball = false;
    Vec ball_center;
    double ball_radius = 0.0;
    HPolytope cuts;               // supporting delta-cuts (empty in ball mode)
    std::vector<Vec> directions;  // grid directions matching cuts
    VPolytope vrep;               // vertex representation (empty when exact ball or empty body)
    double volume = 0.0;
    bool certified_inner = false; // all vrep vertices verified inside K
    bool empty = false;

    double support(const Vec& u) const; // grid-resolution support value
};

// Cut offset: t such that vol(K cap {<u,x> >= t}) = delta, by bisection with
// |cut - delta| <= max(1e-9, 1e-4 * delta).
double delta_cut_offset(const ConvexBody& k, const Vec& u, double delta);

FloatingBodyResult floating_body(const ConvexBody& k, double delta, int grid = 0);

// vol(K) - vol(K_delta), with the cheapest exact route available: closed
// form for balls/ellipsoids, adaptive support-line construction in 2D.
double floating_volume_loss(const ConvexBody& k, double delta, int grid = 0);

// Theorem-style right-hand side for smooth bodies:
// (1/2) ((n+1)/vol_{n-1}(B^{n-1}))^{2/(n+1)} * asa(K).
double smooth_floating_rhs(const ConvexBody& k);

struct RateRow {
    double delta = 0.0;
    double loss = 0.0;
    double ratio = 0.0;
};

// (vol K - vol K_delta)/delta^{2/(n+1)} along a decreasing delta sequence.
std::vector<RateRow> smooth_floating_rate(const ConvexBody& k, const std::vector<double>& deltas);

// (vol P - vol P_delta)/(delta ln(1/delta)^{n-1}).
std::vector<RateRow> polytope_floating_rate(const PolytopeBody& p, const std::vector<double>& deltas,
                                            int grid = 0);

// Aitken extrapolation of the last three rows' ratios.
double extrapolate_tail(const std::vector<RateRow>& rows);

// Geometric delta sequence from vol/100 down to floor_frac*vol (ratio 1/2).
std::vector<double> default_delta_sequence(double volume, double floor_frac = 1e-5);

// One run of the floating-body vertex selection: x_{k+1} is the farthest
// boundary point beyond a supporting hyperplane of K_delta that still has
// all previous choices on the K_delta side.
struct FBARun {
    double delta = 0.0;
    std::vector<Vec> vertices;
    std::vector<Halfspace> planes;
    bool terminated = false;
    std::vector<Vec> directions;
    std::vector<double> kdelta_support;
    double kdelta_volume = 0.0;
    double body_volume = 0.0;
};

FBARun floating_body_algorithm(const ConvexBody& k, double delta, int grid = 0);

struct FBACheck {
    bool inner_containment = false; // K_delta subseteq conv(chosen), grid sense
    double worst_gap = 0.0;
    bool outer_containment = false; // chosen points on boundary of K
    bool cardinality_bound = false; // N <= e^{16n} vol(K\K_delta)/(vol(B) delta)
    double bound_rhs = 0.0;
    double hull_volume = 0.0;
};

FBACheck fba_check(const FBARun& run, const ConvexBody& k);

struct RateFitResult; // from experiments.hpp

// d_S(K, P_N) against N for hulls built by the floating-body algorithm.
std::vector<std::pair<double, double>> fba_volume_curve(const ConvexBody& k,
                                                        const std::vector<long long>& target_sizes);

} // namespace pa

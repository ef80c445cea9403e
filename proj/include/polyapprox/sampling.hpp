#pragma once

#include <functional>
#include <memory>

#include "polyapprox/bodies.hpp"
#include "polyapprox/rng.hpp"

namespace pa {

// Uniform point in the body: direct methods for ball/ellipsoid/cube/simplex,
// rejection from the bounding box otherwise (RejectionStall on acceptance
// rate < 1e-4).
Vec sample_uniform_body(const ConvexBody& k, Rng& rng);

// First boundary hit of the ray origin + s*dir, s > 0.
Vec ray_boundary(const ConvexBody& k, const Vec& origin, const Vec& dir);

enum class DensityKind { Uniform, Cone, Affine, Custom };

// Probability density f on the boundary w.r.t. the surface measure, with the
// sampler matching it. The integral of f is MC-validated at construction.
class BoundaryDensity {
public:
    static BoundaryDensity uniform(BodyPtr b);
    static BoundaryDensity cone(BodyPtr b);
    static BoundaryDensity affine(BodyPtr b);
    static BoundaryDensity custom(BodyPtr b, std::function<double(const Vec&)> f,
                                  double sup_bound);

    DensityKind kind() const { return kind_; }
    const ConvexBody& body() const { return *body_; }
    BodyPtr body_ptr() const { return body_; }
    double density(const Vec& x) const;
    double sup_bound() const { return sup_bound_; }
    Vec sample(Rng& rng) const;

private:
    BoundaryDensity(DensityKind k, BodyPtr b);
    void validate_normalization();
    Vec sample_uniform_surface(Rng& rng) const;

    DensityKind kind_;
    BodyPtr body_;
    std::function<double(const Vec&)> custom_f_;
    double sup_bound_ = 0.0;
    double surface_area_ = 0.0;
    double rejection_bound_ = 0.0; // max of the raw sampling weight on the grid * 1.01
    double asa_cache_ = 0.0;
    Vec centroid_cache_;
    // polytope boundary decomposition: cumulative areas over simplicial pieces
    std::vector<double> piece_cum_;
};

// Point generator feeding random-polytope experiments.
class Sampler {
public:
    static Sampler uniform_in(BodyPtr b);
    static Sampler on_boundary(BoundaryDensity d);
    static Sampler custom(int dim, std::function<Vec(Rng&)> f);

    Vec operator()(Rng& rng) const;
    int dim() const { return dim_; }
    const BodyPtr& body() const { return body_; }

private:
    Sampler() = default;
    int dim_ = 0;
    BodyPtr body_;
    std::shared_ptr<BoundaryDensity> boundary_;
    std::function<Vec(Rng&)> custom_;
};

// Convex hull of n_points i.i.d. draws. Degenerate draws are redrawn with a
// logged count (probability zero in the continuous models).
VPolytope random_polytope(const Sampler& s, long long n_points, Rng& rng,
                          int* redraws = nullptr);

struct CoveringReport {
    std::vector<Vec> points;
    double phi = 0.0;
    bool covering_ok = false;     // every pool direction within phi of a chosen one
    double max_pairwise_dot = 0.0;
    double inradius = 0.0;        // of the hull of the chosen directions
    VPolytope hull;
};

// Greedy maximal phi-separated direction set on S^{n-1} from a deterministic
// quasi-uniform pool; the pool doubles as the covering validation grid.
CoveringReport sphere_covering(int n, double phi, int pool_size = 200000);

// Hull of N uniform points on the sphere of radius 1 + N^{-2/(n-1)}.
VPolytope inflated_sphere_polytope(int n, long long n_points, Rng& rng);

} // namespace pa

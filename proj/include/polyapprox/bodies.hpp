#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "polyapprox/geometry.hpp"
#include "polyapprox/polytope.hpp"

namespace pa {

// Monte Carlo (or exact) scalar estimate with provenance.
struct EstimateRecord {
    double value = 0.0;
    double standard_error = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    double wall_seconds = 0.0;
};

// Capability record for a convex body: membership, support, volume, boundary
// data where a closed form or smooth parameterization exists.
class ConvexBody {
public:
    virtual ~ConvexBody() = default;
    virtual std::string kind() const = 0;
    virtual int dim() const = 0;
    virtual bool contains(const Vec& x, double tol = 1e-9) const = 0;
    virtual double support(const Vec& u) const = 0; // u unit
    virtual Vec support_point(const Vec& u) const = 0;
    virtual double volume() const = 0;
    virtual std::pair<Vec, Vec> bounding_box() const = 0;
    virtual Vec centroid_point() const = 0;
    virtual double surface_area() const = 0;

    virtual Vec outer_normal(const Vec& x) const;
    virtual double curvature(const Vec& x) const; // Gauss-Kronecker at boundary x
    virtual bool on_boundary(const Vec& x, double tol = 1e-9) const;
    // vol(K cap {<u,x> >= t}); exact for every concrete kind here, the base
    // implementation falls back to seeded Monte Carlo with 1e6 samples
    virtual double cut_volume_above(const Vec& u, double t) const;
    virtual bool centrally_symmetric() const { return false; }
    virtual Vec center_of_symmetry() const;
    double diameter() const;
};

using BodyPtr = std::shared_ptr<const ConvexBody>;

class Ball : public ConvexBody {
public:
    Ball(Vec center, double radius);
    std::string kind() const override { return "ball"; }
    int dim() const override { return static_cast<int>(center_.size()); }
    bool contains(const Vec& x, double tol) const override;
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    double volume() const override;
    std::pair<Vec, Vec> bounding_box() const override;
    Vec centroid_point() const override { return center_; }
    double surface_area() const override;
    Vec outer_normal(const Vec& x) const override;
    double curvature(const Vec& x) const override;
    bool on_boundary(const Vec& x, double tol) const override;
    double cut_volume_above(const Vec& u, double t) const override;
    bool centrally_symmetric() const override { return true; }
    Vec center_of_symmetry() const override { return center_; }

    const Vec& center() const { return center_; }
    double radius() const { return radius_; }

private:
    Vec center_;
    double radius_;
};

class Ellipsoid : public ConvexBody {
public:
    // orientation columns are the semiaxis directions; identity by default
    Ellipsoid(Vec center, Vec semiaxes, Mat orientation = {});
    std::string kind() const override { return "ellipsoid"; }
    int dim() const override { return static_cast<int>(center_.size()); }
    bool contains(const Vec& x, double tol) const override;
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    double volume() const override;
    std::pair<Vec, Vec> bounding_box() const override;
    Vec centroid_point() const override { return center_; }
    double surface_area() const override; // dim 2 and 3
    Vec outer_normal(const Vec& x) const override;
    double curvature(const Vec& x) const override;
    bool on_boundary(const Vec& x, double tol) const override;
    double cut_volume_above(const Vec& u, double t) const override;
    bool centrally_symmetric() const override { return true; }
    Vec center_of_symmetry() const override { return center_; }

    const Vec& center() const { return center_; }
    const Vec& semiaxes() const { return axes_; }
    const Mat& orientation() const { return rot_; }
    Vec to_sphere(const Vec& x) const;   // D^{-1} R^T (x - c)
    Vec from_sphere(const Vec& s) const; // c + R D s

private:
    Vec center_;
    Vec axes_;
    Mat rot_;
};

class PolytopeBody : public ConvexBody {
public:
    explicit PolytopeBody(VPolytope p, std::string kind_tag = "polytope");
    std::string kind() const override { return kind_; }
    int dim() const override { return poly_.dim; }
    bool contains(const Vec& x, double tol) const override;
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    double volume() const override { return volume_; }
    std::pair<Vec, Vec> bounding_box() const override;
    Vec centroid_point() const override { return centroid_; }
    double surface_area() const override;
    Vec outer_normal(const Vec& x) const override;
    bool on_boundary(const Vec& x, double tol) const override;
    double cut_volume_above(const Vec& u, double t) const override;

    const VPolytope& polytope() const { return poly_; }
    const std::vector<MergedFacet>& facets() const { return facets_; }

protected:
    VPolytope poly_;
    std::vector<MergedFacet> facets_;
    double volume_ = 0.0;
    Vec centroid_;
    std::string kind_;
};

class Cube : public PolytopeBody {
public:
    // symmetric: [-1,1]^n, otherwise [0,1]^n
    Cube(int n, bool symmetric_box = false);
    bool centrally_symmetric() const override { return true; }
    Vec center_of_symmetry() const override;

private:
    bool symmetric_;
};

class Simplex : public PolytopeBody {
public:
    explicit Simplex(std::vector<Vec> verts);
    static Simplex standard(int n); // conv(0, e_1..e_n)
    static Simplex unit_area_triangle();
};

// Strictly convex planar body with boundary p(t) = r(t) (cos t, sin t),
// r a trigonometric polynomial with two analytic derivatives.
class SmoothPlanarBody : public ConvexBody {
public:
    SmoothPlanarBody(double c0, Vec cos_coeff, Vec sin_coeff);
    std::string kind() const override { return "smooth2d"; }
    int dim() const override { return 2; }
    bool contains(const Vec& x, double tol) const override;
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    double volume() const override;
    std::pair<Vec, Vec> bounding_box() const override;
    Vec centroid_point() const override;
    double surface_area() const override;
    Vec outer_normal(const Vec& x) const override;
    double curvature(const Vec& x) const override;
    bool on_boundary(const Vec& x, double tol) const override;
    double cut_volume_above(const Vec& u, double t) const override;

    double radius(double t) const;
    void radius_derivs(double t, double& r, double& dr, double& ddr) const;
    Vec point(double t) const;
    Vec tangent(double t) const;     // p'(t)
    double speed(double t) const;    // |p'(t)|
    double curvature_at(double t) const;
    double max_radius() const { return rmax_; }

    double c0() const { return c0_; }
    const Vec& cos_coeff() const { return ca_; }
    const Vec& sin_coeff() const { return cb_; }

private:
    double c0_;
    Vec ca_, cb_;
    double rmax_ = 0.0, rmin_ = 0.0;
};

// Spherical cap of the unit ball: volume at height h in [0,2] by adaptive
// quadrature, inverse by bisection. cap_volume_closed is the incomplete-beta
// route used in hot loops; the two are cross-checked in the tests.
double cap_volume(int n, double h);
double cap_volume_closed(int n, double h);
double cap_height(int n, double v);

double gauss_curvature(const ConvexBody& b, const Vec& x);
double affine_surface_area(const ConvexBody& b);

// Applies the volume-preserving linear map T to the ellipsoid and returns
// both affine surface areas (caller asserts equality).
std::pair<double, double> affine_invariance_check(const Ellipsoid& e, const Mat& t);

enum class SymDiffMode { ExactNested, MonteCarlo };

EstimateRecord symdiff_volume(const ConvexBody& a, const ConvexBody& b, SymDiffMode mode,
                              long long samples = 1000000, std::uint64_t seed = 0);

// Exact area of a convex polygon intersected with a disk (boundary walk).
double polygon_disk_intersection_area(const std::vector<Vec>& ring, const Vec& center,
                                      double radius);

} // namespace pa

#include "polyapprox/bodies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "polyapprox/errors.hpp"
#include "polyapprox/rng.hpp"
#include "polyapprox/stats.hpp"

namespace pa {

Vec ConvexBody::outer_normal(const Vec&) const {
    throw KindUnsupported(kind() + ": outer normal not available");
}

double ConvexBody::curvature(const Vec&) const {
    throw CurvatureUnavailable(kind() + ": Gauss-Kronecker curvature not available");
}

bool ConvexBody::on_boundary(const Vec& x, double tol) const {
    double t = tol * std::max(diameter(), 1.0);
    if (!contains(x, tol)) return false;
    // inside but not deep inside
    Vec c = centroid_point();
    Vec d = sub(x, c);
    double nd = norm2(d);
    if (nd == 0.0) return false;
    Vec probe = add(x, scale(d, 2.0 * t / nd));
    return !contains(probe, 0.0);
}

Vec ConvexBody::center_of_symmetry() const {
    throw KindUnsupported(kind() + ": not centrally symmetric");
}

double ConvexBody::diameter() const {
    auto [lo, hi] = bounding_box();
    return dist(lo, hi);
}

double ConvexBody::cut_volume_above(const Vec& u, double t) const {
    // Monte Carlo fallback for kinds without a closed form; deterministic seed
    auto [lo, hi] = bounding_box();
    const int n = dim();
    double box = 1.0;
    for (int i = 0; i < n; ++i) box *= (hi[i] - lo[i]);
    Rng rng(0x5EEDCA9ULL, 1);
    const long long m = 1000000;
    long long hit = 0;
    Vec x(static_cast<std::size_t>(n));
    for (long long s = 0; s < m; ++s) {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        if (dot(u, x) >= t && contains(x, 0.0)) ++hit;
    }
    return box * static_cast<double>(hit) / static_cast<double>(m);
}

// ---------------------------------------------------------------- caps

double cap_volume(int n, double h) {
    if (h < -1e-12 || h > 2.0 + 1e-12) throw OutOfRange("cap_volume: h outside [0,2]");
    h = std::clamp(h, 0.0, 2.0);
    if (h == 0.0) return 0.0;
    double s = 1.0 - h;
    auto f = [n](double t) { return std::pow(std::max(0.0, 1.0 - t * t), 0.5 * (n - 1)); };
    return ball_volume(n - 1) * integrate(f, s, 1.0, 1e-13, 1e-14);
}

double cap_volume_closed(int n, double h) {
    if (h < -1e-12 || h > 2.0 + 1e-12) throw OutOfRange("cap_volume_closed: h outside [0,2]");
    h = std::clamp(h, 0.0, 2.0);
    if (h > 1.0) return ball_volume(n) - cap_volume_closed(n, 2.0 - h);
    if (h == 0.0) return 0.0;
    double s = 1.0 - h;
    double a = 0.5 * (n + 1), b = 0.5;
    double bfun = std::exp(lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b));
    return 0.5 * ball_volume(n - 1) * bfun * beta_inc(a, b, 1.0 - s * s);
}

double cap_height(int n, double v) {
    double total = ball_volume(n);
    if (v < -1e-12 || v > total * (1.0 + 1e-12)) throw OutOfRange("cap_height: volume outside [0, vol(B)]");
    v = std::clamp(v, 0.0, total);
    double lo = 0.0, hi = 2.0;
    for (int it = 0; it < 50; ++it) {
        double mid = 0.5 * (lo + hi);
        if (cap_volume_closed(n, mid) < v)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------- Ball

Ball::Ball(Vec center, double radius) : center_(std::move(center)), radius_(radius) {
    if (radius_ <= 0.0) throw ConfigError("ball: radius must be positive");
}

bool Ball::contains(const Vec& x, double tol) const {
    return dist(x, center_) <= radius_ * (1.0 + tol);
}

double Ball::support(const Vec& u) const { return dot(center_, u) + radius_ * norm2(u); }

Vec Ball::support_point(const Vec& u) const {
    return add(center_, scale(u, radius_ / norm2(u)));
}

double Ball::volume() const { return ball_volume(dim()) * std::pow(radius_, dim()); }

std::pair<Vec, Vec> Ball::bounding_box() const {
    Vec lo = center_, hi = center_;
    for (std::size_t i = 0; i < center_.size(); ++i) {
        lo[i] -= radius_;
        hi[i] += radius_;
    }
    return {lo, hi};
}

double Ball::surface_area() const {
    return sphere_surface(dim()) * std::pow(radius_, dim() - 1);
}

Vec Ball::outer_normal(const Vec& x) const { return normalized(sub(x, center_)); }

double Ball::curvature(const Vec&) const { return std::pow(radius_, -(dim() - 1)); }

bool Ball::on_boundary(const Vec& x, double tol) const {
    return std::fabs(dist(x, center_) - radius_) <= tol * std::max(radius_, 1.0);
}

double Ball::cut_volume_above(const Vec& u, double t) const {
    double nu = norm2(u);
    double d = (t - dot(center_, u)) / nu; // signed distance of plane from center
    if (d >= radius_) return 0.0;
    if (d <= -radius_) return volume();
    double h = 1.0 - d / radius_;
    return std::pow(radius_, dim()) * cap_volume_closed(dim(), h);
}

// ---------------------------------------------------------------- Ellipsoid

Ellipsoid::Ellipsoid(Vec center, Vec semiaxes, Mat orientation)
    : center_(std::move(center)), axes_(std::move(semiaxes)), rot_(std::move(orientation)) {
    for (double a : axes_)
        if (a <= 0.0) throw ConfigError("ellipsoid: semiaxes must be positive");
    if (rot_.empty()) rot_ = identity(dim());
}

Vec Ellipsoid::to_sphere(const Vec& x) const {
    Vec d = sub(x, center_);
    Vec y(axes_.size(), 0.0);
    for (std::size_t j = 0; j < axes_.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < axes_.size(); ++i) s += rot_[i][j] * d[i];
        y[j] = s / axes_[j];
    }
    return y;
}

Vec Ellipsoid::from_sphere(const Vec& s) const {
    Vec x = center_;
    for (std::size_t i = 0; i < axes_.size(); ++i)
        for (std::size_t j = 0; j < axes_.size(); ++j) x[i] += rot_[i][j] * axes_[j] * s[j];
    return x;
}

bool Ellipsoid::contains(const Vec& x, double tol) const {
    return norm2(to_sphere(x)) <= 1.0 + tol;
}

double Ellipsoid::support(const Vec& u) const {
    Vec w(axes_.size(), 0.0);
    for (std::size_t j = 0; j < axes_.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < axes_.size(); ++i) s += rot_[i][j] * u[i];
        w[j] = axes_[j] * s;
    }
    return dot(center_, u) + norm2(w);
}

Vec Ellipsoid::support_point(const Vec& u) const {
    Vec w(axes_.size(), 0.0);
    for (std::size_t j = 0; j < axes_.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < axes_.size(); ++i) s += rot_[i][j] * u[i];
        w[j] = axes_[j] * s;
    }
    return from_sphere(scale(w, 1.0 / norm2(w)));
}

double Ellipsoid::volume() const {
    double v = ball_volume(dim());
    for (double a : axes_) v *= a;
    return v;
}

std::pair<Vec, Vec> Ellipsoid::bounding_box() const {
    Vec lo = center_, hi = center_;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        double half = 0.0;
        for (std::size_t j = 0; j < axes_.size(); ++j)
            half += rot_[i][j] * axes_[j] * rot_[i][j] * axes_[j];
        half = std::sqrt(half);
        lo[i] -= half;
        hi[i] += half;
    }
    return {lo, hi};
}

double Ellipsoid::surface_area() const {
    const int n = dim();
    if (n == 2) {
        double a = axes_[0], b = axes_[1];
        auto f = [&](double t) {
            double st = std::sin(t), ct = std::cos(t);
            return std::sqrt(a * a * st * st + b * b * ct * ct);
        };
        return integrate(f, 0.0, 2.0 * M_PI, 1e-10);
    }
    if (n == 3) {
        double prod = axes_[0] * axes_[1] * axes_[2];
        auto inner = [&](double phi) {
            double sp = std::sin(phi), cp = std::cos(phi);
            auto g = [&](double th) {
                double sx = sp * std::cos(th) / axes_[0];
                double sy = sp * std::sin(th) / axes_[1];
                double sz = cp / axes_[2];
                return std::sqrt(sx * sx + sy * sy + sz * sz);
            };
            return sp * integrate(g, 0.0, 2.0 * M_PI, 1e-9);
        };
        return prod * integrate(inner, 0.0, M_PI, 1e-8);
    }
    throw KindUnsupported("ellipsoid: surface area implemented for dim 2 and 3 only");
}

Vec Ellipsoid::outer_normal(const Vec& x) const {
    Vec y = to_sphere(x); // gradient direction in axis frame: y_j / a_j
    Vec g(axes_.size(), 0.0);
    for (std::size_t i = 0; i < axes_.size(); ++i)
        for (std::size_t j = 0; j < axes_.size(); ++j) g[i] += rot_[i][j] * (y[j] / axes_[j]);
    return normalized(g);
}

double Ellipsoid::curvature(const Vec& x) const {
    const int n = dim();
    Vec d = sub(x, center_);
    Vec y(axes_.size(), 0.0); // axis-frame coordinates
    for (std::size_t j = 0; j < axes_.size(); ++j)
        for (std::size_t i = 0; i < axes_.size(); ++i) y[j] += rot_[i][j] * d[i];
    double prod2 = 1.0, s = 0.0;
    for (std::size_t j = 0; j < axes_.size(); ++j) {
        prod2 *= axes_[j] * axes_[j];
        s += y[j] * y[j] / std::pow(axes_[j], 4);
    }
    return std::pow(s, -0.5 * (n + 1)) / prod2;
}

bool Ellipsoid::on_boundary(const Vec& x, double tol) const {
    return std::fabs(norm2(to_sphere(x)) - 1.0) <= tol;
}

double Ellipsoid::cut_volume_above(const Vec& u, double t) const {
    Vec w(axes_.size(), 0.0);
    for (std::size_t j = 0; j < axes_.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < axes_.size(); ++i) s += rot_[i][j] * u[i];
        w[j] = axes_[j] * s;
    }
    double nw = norm2(w);
    double s0 = (t - dot(center_, u)) / nw;
    if (s0 >= 1.0) return 0.0;
    if (s0 <= -1.0) return volume();
    double prod = 1.0;
    for (double a : axes_) prod *= a;
    return prod * cap_volume_closed(dim(), 1.0 - s0);
}

// ---------------------------------------------------------------- PolytopeBody

PolytopeBody::PolytopeBody(VPolytope p, std::string kind_tag)
    : poly_(std::move(p)), kind_(std::move(kind_tag)) {
    facets_ = merged_facets(poly_);
    volume_ = pa::volume(poly_);
    centroid_ = pa::centroid(poly_);
}

bool PolytopeBody::contains(const Vec& x, double tol) const {
    double t = tol * std::max(poly_.diameter, 1.0);
    for (const auto& f : facets_)
        if (dot(f.normal, x) - f.offset > t) return false;
    return true;
}

double PolytopeBody::support(const Vec& u) const {
    double best = -1e300;
    for (const auto& v : poly_.vertices) best = std::max(best, dot(u, v));
    return best;
}

Vec PolytopeBody::support_point(const Vec& u) const {
    double best = -1e300;
    const Vec* bv = nullptr;
    for (const auto& v : poly_.vertices) {
        double s = dot(u, v);
        if (s > best) {
            best = s;
            bv = &v;
        }
    }
    return *bv;
}

std::pair<Vec, Vec> PolytopeBody::bounding_box() const {
    Vec lo = poly_.vertices[0], hi = poly_.vertices[0];
    for (const auto& v : poly_.vertices)
        for (std::size_t i = 0; i < v.size(); ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    return {lo, hi};
}

double PolytopeBody::surface_area() const {
    const int n = poly_.dim;
    double total = 0.0;
    double fact = 1.0;
    for (int i = 2; i <= n - 1; ++i) fact *= i;
    for (const auto& f : poly_.sfacets) {
        // Gram determinant of the edge matrix
        std::vector<Vec> e;
        for (std::size_t i = 1; i < f.vtx.size(); ++i)
            e.push_back(sub(poly_.vertices[f.vtx[i]], poly_.vertices[f.vtx[0]]));
        Mat g(e.size(), Vec(e.size()));
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = 0; j < e.size(); ++j) g[i][j] = dot(e[i], e[j]);
        total += std::sqrt(std::max(0.0, det(g))) / fact;
    }
    return total;
}

Vec PolytopeBody::outer_normal(const Vec& x) const {
    double best = 1e300;
    const MergedFacet* bf = nullptr;
    for (const auto& f : facets_) {
        double s = std::fabs(dot(f.normal, x) - f.offset);
        if (s < best) {
            best = s;
            bf = &f;
        }
    }
    return bf->normal;
}

bool PolytopeBody::on_boundary(const Vec& x, double tol) const {
    double t = tol * std::max(poly_.diameter, 1.0);
    if (!contains(x, tol)) return false;
    for (const auto& f : facets_)
        if (std::fabs(dot(f.normal, x) - f.offset) <= t) return true;
    return false;
}

double PolytopeBody::cut_volume_above(const Vec& u, double t) const {
    return pa::cut_volume_above(poly_, u, t);
}

// ---------------------------------------------------------------- Cube / Simplex

namespace {

std::vector<Vec> cube_corners(int n, bool symmetric_box) {
    std::vector<Vec> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            v[i] = (mask >> i & 1) ? 1.0 : (symmetric_box ? -1.0 : 0.0);
        pts.push_back(std::move(v));
    }
    return pts;
}

} // namespace

Cube::Cube(int n, bool symmetric_box)
    : PolytopeBody(convex_hull(cube_corners(n, symmetric_box), n), "cube"),
      symmetric_(symmetric_box) {}

Vec Cube::center_of_symmetry() const {
    return symmetric_ ? zeros(dim()) : Vec(static_cast<std::size_t>(dim()), 0.5);
}

Simplex::Simplex(std::vector<Vec> verts)
    : PolytopeBody(convex_hull(verts, static_cast<int>(verts[0].size())), "simplex") {
    if (verts.size() != poly_.vertices.size())
        throw DegenerateInput("simplex: vertex list is not in convex position");
}

Simplex Simplex::standard(int n) {
    std::vector<Vec> v{zeros(n)};
    for (int i = 0; i < n; ++i) v.push_back(unit(n, i));
    return Simplex(std::move(v));
}

Simplex Simplex::unit_area_triangle() {
    // standard triangle scaled to area 1
    double s = std::sqrt(2.0);
    return Simplex({{0.0, 0.0}, {s, 0.0}, {0.0, s}});
}

// ---------------------------------------------------------------- SmoothPlanarBody

SmoothPlanarBody::SmoothPlanarBody(double c0, Vec cos_coeff, Vec sin_coeff)
    : c0_(c0), ca_(std::move(cos_coeff)), cb_(std::move(sin_coeff)) {
    rmax_ = 0.0;
    rmin_ = 1e300;
    for (int i = 0; i < 4096; ++i) {
        double t = 2.0 * M_PI * i / 4096;
        double r, dr, ddr;
        radius_derivs(t, r, dr, ddr);
        rmax_ = std::max(rmax_, r);
        rmin_ = std::min(rmin_, r);
        if (r <= 0.0) throw DegenerateInput("smooth2d: radius must stay positive");
        double kappa = (r * r + 2.0 * dr * dr - r * ddr);
        if (kappa <= 0.0) throw DegenerateInput("smooth2d: boundary is not strictly convex");
    }
}

void SmoothPlanarBody::radius_derivs(double t, double& r, double& dr, double& ddr) const {
    r = c0_;
    dr = 0.0;
    ddr = 0.0;
    for (std::size_t k = 1; k <= ca_.size(); ++k) {
        double kk = static_cast<double>(k);
        double c = std::cos(kk * t), s = std::sin(kk * t);
        double a = ca_[k - 1];
        double b = (k <= cb_.size()) ? cb_[k - 1] : 0.0;
        r += a * c + b * s;
        dr += -a * kk * s + b * kk * c;
        ddr += -a * kk * kk * c - b * kk * kk * s;
    }
    for (std::size_t k = ca_.size() + 1; k <= cb_.size(); ++k) {
        double kk = static_cast<double>(k);
        double c = std::cos(kk * t), s = std::sin(kk * t);
        double b = cb_[k - 1];
        r += b * s;
        dr += b * kk * c;
        ddr += -b * kk * kk * s;
    }
}

double SmoothPlanarBody::radius(double t) const {
    double r, dr, ddr;
    radius_derivs(t, r, dr, ddr);
    return r;
}

Vec SmoothPlanarBody::point(double t) const {
    double r = radius(t);
    return {r * std::cos(t), r * std::sin(t)};
}

Vec SmoothPlanarBody::tangent(double t) const {
    double r, dr, ddr;
    radius_derivs(t, r, dr, ddr);
    double c = std::cos(t), s = std::sin(t);
    return {dr * c - r * s, dr * s + r * c};
}

double SmoothPlanarBody::speed(double t) const { return norm2(tangent(t)); }

double SmoothPlanarBody::curvature_at(double t) const {
    double r, dr, ddr;
    radius_derivs(t, r, dr, ddr);
    double num = r * r + 2.0 * dr * dr - r * ddr;
    double den = std::pow(r * r + dr * dr, 1.5);
    return num / den;
}

bool SmoothPlanarBody::contains(const Vec& x, double tol) const {
    double t = std::atan2(x[1], x[0]);
    return norm2(x) <= radius(t) + tol * rmax_;
}

bool SmoothPlanarBody::on_boundary(const Vec& x, double tol) const {
    double t = std::atan2(x[1], x[0]);
    return std::fabs(norm2(x) - radius(t)) <= tol * std::max(rmax_, 1.0);
}

double SmoothPlanarBody::support(const Vec& u) const {
    return dot(support_point(u), u);
}

Vec SmoothPlanarBody::support_point(const Vec& u) const {
    const int grid = 1024;
    int best = 0;
    double bestv = -1e300;
    for (int i = 0; i < grid; ++i) {
        double t = 2.0 * M_PI * i / grid;
        double v = dot(point(t), u);
        if (v > bestv) {
            bestv = v;
            best = i;
        }
    }
    double lo = 2.0 * M_PI * (best - 1) / grid;
    double hi = 2.0 * M_PI * (best + 1) / grid;
    for (int it = 0; it < 100; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (dot(point(m1), u) < dot(point(m2), u))
            lo = m1;
        else
            hi = m2;
    }
    return point(0.5 * (lo + hi));
}

double SmoothPlanarBody::volume() const {
    // (1/2) int r^2 dt has a closed form for a trigonometric polynomial
    double v = M_PI * c0_ * c0_;
    for (double a : ca_) v += 0.5 * M_PI * a * a;
    for (double b : cb_) v += 0.5 * M_PI * b * b;
    return v;
}

std::pair<Vec, Vec> SmoothPlanarBody::bounding_box() const {
    Vec lo{1e300, 1e300}, hi{-1e300, -1e300};
    for (int i = 0; i < 4096; ++i) {
        Vec p = point(2.0 * M_PI * i / 4096);
        lo[0] = std::min(lo[0], p[0]);
        lo[1] = std::min(lo[1], p[1]);
        hi[0] = std::max(hi[0], p[0]);
        hi[1] = std::max(hi[1], p[1]);
    }
    lo[0] -= 1e-9 * rmax_;
    lo[1] -= 1e-9 * rmax_;
    hi[0] += 1e-9 * rmax_;
    hi[1] += 1e-9 * rmax_;
    return {lo, hi};
}

Vec SmoothPlanarBody::centroid_point() const {
    double area = volume();
    auto fx = [&](double t) {
        double r = radius(t);
        return r * r * r * std::cos(t) / 3.0;
    };
    auto fy = [&](double t) {
        double r = radius(t);
        return r * r * r * std::sin(t) / 3.0;
    };
    return {integrate(fx, 0.0, 2.0 * M_PI, 1e-10) / area,
            integrate(fy, 0.0, 2.0 * M_PI, 1e-10) / area};
}

double SmoothPlanarBody::surface_area() const {
    auto f = [&](double t) { return speed(t); };
    return integrate(f, 0.0, 2.0 * M_PI, 1e-10);
}

Vec SmoothPlanarBody::outer_normal(const Vec& x) const {
    double t = std::atan2(x[1], x[0]);
    Vec tan = tangent(t);
    return normalized(Vec{tan[1], -tan[0]});
}

double SmoothPlanarBody::curvature(const Vec& x) const {
    return curvature_at(std::atan2(x[1], x[0]));
}

double SmoothPlanarBody::cut_volume_above(const Vec& u, double t) const {
    auto g = [&](double th) { return dot(point(th), u) - t; };
    const int grid = 2048;
    std::vector<double> brackets;
    double prev = g(0.0);
    bool any_pos = prev > 0.0, any_neg = prev < 0.0;
    for (int i = 1; i <= grid; ++i) {
        double th = 2.0 * M_PI * i / grid;
        double cur = g(th);
        any_pos = any_pos || cur > 0.0;
        any_neg = any_neg || cur < 0.0;
        if ((prev > 0.0) != (cur > 0.0)) brackets.push_back(th);
        prev = cur;
    }
    if (!any_pos) return 0.0;
    if (!any_neg) return volume();
    if (brackets.size() != 2)
        throw CutVolumeUnresolved("smooth2d: cut boundary crossing count != 2");
    auto refine = [&](double hi_th) {
        double lo_th = hi_th - 2.0 * M_PI / grid;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo_th + hi_th);
            if ((g(lo_th) > 0.0) != (g(mid) > 0.0))
                hi_th = mid;
            else
                lo_th = mid;
        }
        return 0.5 * (lo_th + hi_th);
    };
    double t1 = refine(brackets[0]);
    double t2 = refine(brackets[1]);
    // arrange so g > 0 on (t1, t2)
    if (g(0.5 * (t1 + t2)) <= 0.0) {
        std::swap(t1, t2);
        t2 += 2.0 * M_PI;
    }
    auto r2 = [&](double th) {
        double r = radius(th);
        return r * r;
    };
    double arc = integrate(r2, t1, t2, 1e-11);
    Vec p1 = point(t1), p2 = point(t2);
    double chord = p2[0] * p1[1] - p1[0] * p2[1];
    return 0.5 * (arc + chord);
}

// ---------------------------------------------------------------- ops

double gauss_curvature(const ConvexBody& b, const Vec& x) {
    if (!b.on_boundary(x, 1e-9)) throw OutOfRange("gauss_curvature: x is not on the boundary");
    return b.curvature(x);
}

double affine_surface_area(const ConvexBody& b) {
    const int n = b.dim();
    if (b.kind() == "ball") {
        const auto& ball = dynamic_cast<const Ball&>(b);
        return b.surface_area() * std::pow(ball.radius(), -(n - 1.0) / (n + 1.0));
    }
    if (b.kind() == "ellipsoid") {
        const auto& e = dynamic_cast<const Ellipsoid&>(b);
        double prod = 1.0;
        for (double a : e.semiaxes()) prod *= a;
        return sphere_surface(n) * std::pow(prod, (n - 1.0) / (n + 1.0));
    }
    if (b.kind() == "smooth2d") {
        const auto& s = dynamic_cast<const SmoothPlanarBody&>(b);
        auto f = [&](double t) { return std::cbrt(s.curvature_at(t)) * s.speed(t); };
        return integrate(f, 0.0, 2.0 * M_PI, 1e-9);
    }
    throw CurvatureUnavailable(b.kind() + ": affine surface area needs curvature");
}

std::pair<double, double> affine_invariance_check(const Ellipsoid& e, const Mat& t) {
    double dt = det(t);
    if (std::fabs(std::fabs(dt) - 1.0) > 1e-12)
        throw NotVolumePreserving("affine_invariance_check: |det T| != 1");
    const int n = e.dim();
    // shape matrix of T(E): semiaxes and orientation from eigen(M M^T), M = T R D
    Mat m(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += t[i][k] * e.orientation()[k][j];
            m[i][j] = s * e.semiaxes()[j];
        }
    Mat mmT(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mmT[i][j] = dot(m[i], m[j]);
    Mat evecs;
    Vec evals = jacobi_eigen_sym(mmT, evecs);
    Vec axes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) axes[i] = std::sqrt(std::max(evals[i], 0.0));
    Vec tc = matvec(t, e.center());
    Ellipsoid te(tc, axes, evecs);
    return {affine_surface_area(e), affine_surface_area(te)};
}

namespace {

// true iff containment a ⊆ b is certified by an exact test
bool certify_subset(const ConvexBody& a, const ConvexBody& b) {
    if (const auto* pa_ = dynamic_cast<const PolytopeBody*>(&a)) {
        for (const auto& v : pa_->polytope().vertices)
            if (!b.contains(v, 1e-9)) return false;
        return true;
    }
    if (const auto* ball_a = dynamic_cast<const Ball*>(&a)) {
        if (const auto* ball_b = dynamic_cast<const Ball*>(&b))
            return dist(ball_a->center(), ball_b->center()) + ball_a->radius() <=
                   ball_b->radius() * (1.0 + 1e-12);
        if (const auto* poly_b = dynamic_cast<const PolytopeBody*>(&b)) {
            for (const auto& f : poly_b->facets())
                if (dot(f.normal, ball_a->center()) + ball_a->radius() >
                    f.offset + 1e-12 * std::max(1.0, poly_b->polytope().diameter))
                    return false;
            return true;
        }
    }
    return false;
}

} // namespace

EstimateRecord symdiff_volume(const ConvexBody& a, const ConvexBody& b, SymDiffMode mode,
                              long long samples, std::uint64_t seed) {
    EstimateRecord rec;
    rec.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    if (mode == SymDiffMode::ExactNested) {
        if (!certify_subset(a, b) && !certify_subset(b, a))
            throw ContainmentNotCertified("symdiff exact-nested: neither containment verifies");
        rec.value = std::fabs(a.volume() - b.volume());
        rec.standard_error = 0.0;
        rec.samples = 0;
    } else {
        auto [loa, hia] = a.bounding_box();
        auto [lob, hib] = b.bounding_box();
        const int n = a.dim();
        Vec lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
        double box = 1.0;
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(loa[i], lob[i]);
            hi[i] = std::max(hia[i], hib[i]);
            box *= hi[i] - lo[i];
        }
        Rng rng(seed, 777);
        long long hit = 0;
        Vec x(static_cast<std::size_t>(n));
        for (long long s = 0; s < samples; ++s) {
            for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
            if (a.contains(x, 0.0) != b.contains(x, 0.0)) ++hit;
        }
        double p = static_cast<double>(hit) / static_cast<double>(samples);
        rec.value = box * p;
        rec.standard_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
        rec.samples = samples;
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

double polygon_disk_intersection_area(const std::vector<Vec>& ring, const Vec& center,
                                      double radius) {
    const double r2 = radius * radius;
    auto cross = [](const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; };
    double total = 0.0;
    const int k = static_cast<int>(ring.size());
    for (int i = 0; i < k; ++i) {
        Vec a = sub(ring[i], center);
        Vec b = sub(ring[(i + 1) % k], center);
        bool ina = dot(a, a) <= r2, inb = dot(b, b) <= r2;
        if (ina && inb) {
            total += 0.5 * cross(a, b);
            continue;
        }
        // circle intersections along the segment
        Vec d = sub(b, a);
        double qa = dot(d, d), qb = 2.0 * dot(a, d), qc = dot(a, a) - r2;
        double disc = qb * qb - 4.0 * qa * qc;
        std::vector<double> ts;
        if (disc > 0.0) {
            double sq = std::sqrt(disc);
            for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)})
                if (t > 1e-14 && t < 1.0 - 1e-14) ts.push_back(t);
            std::sort(ts.begin(), ts.end());
        }
        std::vector<Vec> pieces{a};
        for (double t : ts) pieces.push_back(add(a, scale(d, t)));
        pieces.push_back(b);
        for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
            Vec p = pieces[j], q = pieces[j + 1];
            Vec mid = scale(add(p, q), 0.5);
            if (dot(mid, mid) <= r2) {
                total += 0.5 * cross(p, q);
            } else {
                double ang = std::atan2(cross(p, q), dot(p, q));
                total += 0.5 * r2 * ang;
            }
        }
    }
    return std::fabs(total);
}

} // namespace pa

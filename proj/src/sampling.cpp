#include "polyapprox/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "polyapprox/errors.hpp"
#include "polyapprox/grids.hpp"
#include "polyapprox/stats.hpp"

namespace pa {

namespace {

Vec sample_simplex(const std::vector<Vec>& verts, Rng& rng) {
    // exponential spacings give Dirichlet(1,..,1) barycentric weights
    std::vector<double> e(verts.size());
    double tot = 0.0;
    for (auto& x : e) {
        x = rng.exponential();
        tot += x;
    }
    Vec p = zeros(static_cast<int>(verts[0].size()));
    for (std::size_t i = 0; i < verts.size(); ++i) axpy(e[i] / tot, verts[i], p);
    return p;
}

} // namespace

Vec sample_uniform_body(const ConvexBody& k, Rng& rng) {
    const int n = k.dim();
    if (const auto* ball = dynamic_cast<const Ball*>(&k)) {
        Vec d = rng.sphere_dir(n);
        double r = ball->radius() * std::pow(rng.uniform01(), 1.0 / n);
        return add(ball->center(), scale(d, r));
    }
    if (const auto* ell = dynamic_cast<const Ellipsoid*>(&k)) {
        Vec d = rng.sphere_dir(n);
        double r = std::pow(rng.uniform01(), 1.0 / n);
        return ell->from_sphere(scale(d, r));
    }
    if (k.kind() == "cube") {
        auto [lo, hi] = k.bounding_box();
        Vec p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[i] = rng.uniform(lo[i], hi[i]);
        return p;
    }
    if (const auto* sx = dynamic_cast<const Simplex*>(&k))
        return sample_simplex(sx->polytope().vertices, rng);

    auto [lo, hi] = k.bounding_box();
    Vec p(static_cast<std::size_t>(n));
    long long proposals = 0, accepts = 0;
    for (;;) {
        for (int i = 0; i < n; ++i) p[i] = rng.uniform(lo[i], hi[i]);
        ++proposals;
        if (k.contains(p, 0.0)) {
            ++accepts;
            return p;
        }
        if (proposals >= 100000 && accepts * 10000 < proposals)
            throw RejectionStall("sample_uniform_body: acceptance rate below 1e-4");
    }
}

Vec ray_boundary(const ConvexBody& k, const Vec& origin, const Vec& dir) {
    if (const auto* ball = dynamic_cast<const Ball*>(&k)) {
        Vec oc = sub(origin, ball->center());
        double b = dot(oc, dir), c = dot(oc, oc) - ball->radius() * ball->radius();
        double disc = b * b - dot(dir, dir) * c;
        double s = (-b + std::sqrt(std::max(0.0, disc))) / dot(dir, dir);
        return add(origin, scale(dir, s));
    }
    if (const auto* ell = dynamic_cast<const Ellipsoid*>(&k)) {
        // solve in sphere coordinates
        Vec o = ell->to_sphere(origin);
        Vec d = sub(ell->to_sphere(add(origin, dir)), o);
        double a = dot(d, d), b = dot(o, d), c = dot(o, o) - 1.0;
        double disc = b * b - a * c;
        double s = (-b + std::sqrt(std::max(0.0, disc))) / a;
        Vec hit = add(o, scale(d, s));
        return ell->from_sphere(hit);
    }
    if (const auto* poly = dynamic_cast<const PolytopeBody*>(&k)) {
        double s = 1e300;
        for (const auto& f : poly->facets()) {
            double dn = dot(f.normal, dir);
            if (dn > 1e-14) s = std::min(s, (f.offset - dot(f.normal, origin)) / dn);
        }
        if (s >= 1e300) throw NumericalFailure("ray_boundary: unbounded ray");
        return add(origin, scale(dir, s));
    }
    // generic bracketing + bisection on membership
    double hi = 1.0;
    while (k.contains(add(origin, scale(dir, hi)), 0.0) && hi < 1e12) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (k.contains(add(origin, scale(dir, mid)), 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return add(origin, scale(dir, 0.5 * (lo + hi)));
}

// ---------------------------------------------------------------- BoundaryDensity

BoundaryDensity::BoundaryDensity(DensityKind k, BodyPtr b) : kind_(k), body_(std::move(b)) {
    centroid_cache_ = body_->centroid_point();
}

BoundaryDensity BoundaryDensity::uniform(BodyPtr b) {
    BoundaryDensity d(DensityKind::Uniform, std::move(b));
    d.surface_area_ = d.body_->surface_area();
    d.sup_bound_ = 1.0 / d.surface_area_;
    if (const auto* poly = dynamic_cast<const PolytopeBody*>(d.body_.get())) {
        const auto& P = poly->polytope();
        double cum = 0.0;
        const int n = P.dim;
        double fact = 1.0;
        for (int i = 2; i <= n - 1; ++i) fact *= i;
        for (const auto& f : P.sfacets) {
            std::vector<Vec> e;
            for (std::size_t i = 1; i < f.vtx.size(); ++i)
                e.push_back(sub(P.vertices[f.vtx[i]], P.vertices[f.vtx[0]]));
            Mat g(e.size(), Vec(e.size()));
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = 0; j < e.size(); ++j) g[i][j] = dot(e[i], e[j]);
            cum += std::sqrt(std::max(0.0, det(g))) / fact;
            d.piece_cum_.push_back(cum);
        }
    }
    d.rejection_bound_ = 0.0;
    if (d.body_->kind() == "smooth2d") {
        const auto& s = dynamic_cast<const SmoothPlanarBody&>(*d.body_);
        for (int i = 0; i < 4096; ++i)
            d.rejection_bound_ = std::max(d.rejection_bound_, s.speed(2.0 * M_PI * i / 4096));
        d.rejection_bound_ *= 1.01;
    } else if (d.body_->kind() == "ellipsoid") {
        const auto& e = dynamic_cast<const Ellipsoid&>(*d.body_);
        double amin = 1e300;
        for (double a : e.semiaxes()) amin = std::min(amin, a);
        double prod = 1.0;
        for (double a : e.semiaxes()) prod *= a;
        d.rejection_bound_ = 1.01 * prod / amin;
    }
    d.validate_normalization();
    return d;
}

BoundaryDensity BoundaryDensity::cone(BodyPtr b) {
    BoundaryDensity d(DensityKind::Cone, std::move(b));
    d.surface_area_ = d.body_->surface_area();
    // f(x) = <x - cen, N(x)>/(n vol); bound via diameter
    d.sup_bound_ = d.body_->diameter() / (d.body_->dim() * d.body_->volume());
    d.validate_normalization();
    return d;
}

BoundaryDensity BoundaryDensity::affine(BodyPtr b) {
    BoundaryDensity d(DensityKind::Affine, std::move(b));
    const std::string kind = d.body_->kind();
    if (kind != "ball" && kind != "ellipsoid" && kind != "smooth2d")
        throw KindUnsupported("boundary density: affine kind needs curvature");
    d.surface_area_ = d.body_->surface_area();
    d.asa_cache_ = affine_surface_area(*d.body_);
    const int n = d.body_->dim();
    // rejection bounds are on the raw weight kappa^{1/(n+1)} * surface element;
    // the asa normalization cancels in the accept ratio
    if (kind == "smooth2d") {
        const auto& s = dynamic_cast<const SmoothPlanarBody&>(*d.body_);
        double m = 0.0, supf = 0.0;
        for (int i = 0; i < 4096; ++i) {
            double t = 2.0 * M_PI * i / 4096;
            m = std::max(m, std::cbrt(s.curvature_at(t)) * s.speed(t));
            supf = std::max(supf, std::cbrt(s.curvature_at(t)));
        }
        d.rejection_bound_ = 1.01 * m;
        d.sup_bound_ = supf / d.asa_cache_;
    } else if (kind == "ellipsoid") {
        const auto& e = dynamic_cast<const Ellipsoid&>(*d.body_);
        auto dirs = sphere_directions(n, 8192);
        double m = 0.0, supf = 0.0;
        double prod = 1.0;
        for (double a : e.semiaxes()) prod *= a;
        for (const auto& s : dirs) {
            Vec x = e.from_sphere(s);
            double kappa = e.curvature(x);
            double w = 0.0; // surface element weight
            for (std::size_t j = 0; j < e.semiaxes().size(); ++j)
                w += s[j] * s[j] / (e.semiaxes()[j] * e.semiaxes()[j]);
            w = prod * std::sqrt(w);
            m = std::max(m, std::pow(kappa, 1.0 / (n + 1.0)) * w);
            supf = std::max(supf, std::pow(kappa, 1.0 / (n + 1.0)));
        }
        d.rejection_bound_ = 1.02 * m;
        d.sup_bound_ = supf / d.asa_cache_;
    } else {
        d.sup_bound_ = 1.0 / d.surface_area_; // ball: affine = uniform
    }
    d.validate_normalization();
    return d;
}

BoundaryDensity BoundaryDensity::custom(BodyPtr b, std::function<double(const Vec&)> f,
                                        double sup_bound) {
    BoundaryDensity d(DensityKind::Custom, std::move(b));
    d.custom_f_ = std::move(f);
    d.sup_bound_ = sup_bound;
    d.surface_area_ = d.body_->surface_area();
    d.validate_normalization();
    return d;
}

double BoundaryDensity::density(const Vec& x) const {
    const int n = body_->dim();
    switch (kind_) {
        case DensityKind::Uniform:
            return 1.0 / surface_area_;
        case DensityKind::Cone:
            return dot(sub(x, centroid_cache_), body_->outer_normal(x)) / (n * body_->volume());
        case DensityKind::Affine:
            return std::pow(body_->curvature(x), 1.0 / (n + 1.0)) / asa_cache_;
        case DensityKind::Custom:
            return custom_f_(x);
    }
    return 0.0;
}

Vec BoundaryDensity::sample_uniform_surface(Rng& rng) const {
    const int n = body_->dim();
    if (const auto* ball = dynamic_cast<const Ball*>(body_.get()))
        return add(ball->center(), scale(rng.sphere_dir(n), ball->radius()));
    if (!piece_cum_.empty()) {
        const auto* poly = dynamic_cast<const PolytopeBody*>(body_.get());
        const auto& P = poly->polytope();
        double u = rng.uniform01() * piece_cum_.back();
        std::size_t idx = std::lower_bound(piece_cum_.begin(), piece_cum_.end(), u) -
                          piece_cum_.begin();
        std::vector<Vec> verts;
        for (int v : P.sfacets[idx].vtx) verts.push_back(P.vertices[v]);
        return sample_simplex(verts, rng);
    }
    if (const auto* s2 = dynamic_cast<const SmoothPlanarBody*>(body_.get())) {
        for (;;) {
            double t = rng.uniform(0.0, 2.0 * M_PI);
            if (rng.uniform01() * rejection_bound_ <= s2->speed(t)) return s2->point(t);
        }
    }
    if (const auto* e = dynamic_cast<const Ellipsoid*>(body_.get())) {
        double prod = 1.0;
        for (double a : e->semiaxes()) prod *= a;
        for (;;) {
            Vec s = rng.sphere_dir(n);
            double w = 0.0;
            for (std::size_t j = 0; j < e->semiaxes().size(); ++j)
                w += s[j] * s[j] / (e->semiaxes()[j] * e->semiaxes()[j]);
            w = prod * std::sqrt(w);
            if (rng.uniform01() * rejection_bound_ <= w) return e->from_sphere(s);
        }
    }
    throw KindUnsupported("boundary sampling: unsupported body kind " + body_->kind());
}

Vec BoundaryDensity::sample(Rng& rng) const {
    const int n = body_->dim();
    switch (kind_) {
        case DensityKind::Uniform:
            return sample_uniform_surface(rng);
        case DensityKind::Cone: {
            // radial projection of a uniform interior point from the centroid
            // is exactly the cone measure
            for (;;) {
                Vec p = sample_uniform_body(*body_, rng);
                Vec d = sub(p, centroid_cache_);
                double nd = norm2(d);
                if (nd > 1e-14) return ray_boundary(*body_, centroid_cache_, scale(d, 1.0 / nd));
            }
        }
        case DensityKind::Affine: {
            if (body_->kind() == "ball") return sample_uniform_surface(rng);
            if (const auto* s2 = dynamic_cast<const SmoothPlanarBody*>(body_.get())) {
                for (;;) {
                    double t = rng.uniform(0.0, 2.0 * M_PI);
                    double w = std::cbrt(s2->curvature_at(t)) * s2->speed(t);
                    if (rng.uniform01() * rejection_bound_ <= w) return s2->point(t);
                }
            }
            const auto* e = dynamic_cast<const Ellipsoid*>(body_.get());
            double prod = 1.0;
            for (double a : e->semiaxes()) prod *= a;
            for (;;) {
                Vec s = rng.sphere_dir(n);
                Vec x = e->from_sphere(s);
                double w = 0.0;
                for (std::size_t j = 0; j < e->semiaxes().size(); ++j)
                    w += s[j] * s[j] / (e->semiaxes()[j] * e->semiaxes()[j]);
                w = prod * std::sqrt(w);
                double target = std::pow(e->curvature(x), 1.0 / (n + 1.0)) * w;
                if (rng.uniform01() * rejection_bound_ <= target) return x;
            }
        }
        case DensityKind::Custom: {
            for (;;) {
                Vec x = sample_uniform_surface(rng);
                if (rng.uniform01() * sup_bound_ <= custom_f_(x)) return x;
            }
        }
    }
    throw NumericalFailure("boundary sample: unreachable");
}

void BoundaryDensity::validate_normalization() {
    // MC quadrature of f over the boundary against 1
    Rng rng(0xFACADEULL, 99);
    const int m = 20000;
    std::vector<double> vals;
    vals.reserve(m);
    for (int i = 0; i < m; ++i) {
        Vec x = sample_uniform_surface(rng);
        vals.push_back(density(x));
    }
    auto [mean, sd] = mean_std(vals);
    double integral = mean * surface_area_;
    double err = sd * surface_area_ / std::sqrt(static_cast<double>(m));
    if (std::fabs(integral - 1.0) > std::max(1e-3, 4.0 * err))
        throw NormalizationFailure("boundary density does not integrate to 1");
}

// ---------------------------------------------------------------- Sampler

Sampler Sampler::uniform_in(BodyPtr b) {
    Sampler s;
    s.dim_ = b->dim();
    s.body_ = std::move(b);
    return s;
}

Sampler Sampler::on_boundary(BoundaryDensity d) {
    Sampler s;
    s.dim_ = d.body().dim();
    s.body_ = d.body_ptr();
    s.boundary_ = std::make_shared<BoundaryDensity>(std::move(d));
    return s;
}

Sampler Sampler::custom(int dim, std::function<Vec(Rng&)> f) {
    Sampler s;
    s.dim_ = dim;
    s.custom_ = std::move(f);
    return s;
}

Vec Sampler::operator()(Rng& rng) const {
    if (custom_) return custom_(rng);
    if (boundary_) return boundary_->sample(rng);
    return sample_uniform_body(*body_, rng);
}

VPolytope random_polytope(const Sampler& s, long long n_points, Rng& rng, int* redraws) {
    if (n_points < s.dim() + 1)
        throw ConfigError("random_polytope: need at least dim+1 points");
    int attempts = 0;
    for (;;) {
        std::vector<Vec> pts;
        pts.reserve(static_cast<std::size_t>(n_points));
        for (long long i = 0; i < n_points; ++i) pts.push_back(s(rng));
        try {
            return convex_hull(pts, s.dim(), HullOptions{false});
        } catch (const DegenerateInput&) {
            if (++attempts > 5) throw;
            if (redraws) ++(*redraws);
        }
    }
}

// ---------------------------------------------------------------- coverings

CoveringReport sphere_covering(int n, double phi, int pool_size) {
    if (!(phi > 0.0 && phi < M_PI / 2.0)) throw OutOfRange("sphere_covering: phi outside (0, pi/2)");
    if (n < 2 || n > 4) throw OutOfRange("sphere_covering: n in {2,3,4}");
    std::vector<Vec> pool = sphere_directions(n, pool_size);
    const double c = std::cos(phi);

    CoveringReport rep;
    rep.phi = phi;
    for (const auto& x : pool) {
        bool separated = true;
        for (const auto& xi : rep.points)
            if (dot(x, xi) > c) {
                separated = false;
                break;
            }
        if (separated) rep.points.push_back(x);
        if (rep.points.size() * 5 > pool.size())
            throw PoolExhausted("sphere_covering: pool resolution too coarse for phi");
    }
    // the pool doubles as the covering validation grid
    rep.covering_ok = true;
    for (const auto& x : pool) {
        bool covered = false;
        for (const auto& xi : rep.points)
            if (dot(x, xi) >= c) {
                covered = true;
                break;
            }
        if (!covered) {
            rep.covering_ok = false;
            break;
        }
    }
    rep.max_pairwise_dot = -1.0;
    for (std::size_t i = 0; i < rep.points.size(); ++i)
        for (std::size_t j = i + 1; j < rep.points.size(); ++j)
            rep.max_pairwise_dot = std::max(rep.max_pairwise_dot, dot(rep.points[i], rep.points[j]));

    rep.hull = convex_hull(rep.points, n, HullOptions{false});
    rep.inradius = 1e300;
    for (const auto& f : merged_facets(rep.hull))
        rep.inradius = std::min(rep.inradius, f.offset);
    return rep;
}

VPolytope inflated_sphere_polytope(int n, long long n_points, Rng& rng) {
    if (n_points < 2 * n) throw ConfigError("inflated_sphere_polytope: N >= 2n required");
    double radius = 1.0 + std::pow(static_cast<double>(n_points), -2.0 / (n - 1.0));
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(n_points));
    for (long long i = 0; i < n_points; ++i) pts.push_back(scale(rng.sphere_dir(n), radius));
    return convex_hull(pts, n, HullOptions{false});
}

} // namespace pa

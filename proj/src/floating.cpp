#include "polyapprox/floating.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "polyapprox/errors.hpp"
#include "polyapprox/geometry.hpp"
#include "polyapprox/grids.hpp"

namespace pa {

double FloatingBodyResult::support(const Vec& u) const {
    if (exact_ball) return dot(ball_center, u) + ball_radius;
    if (empty) throw EmptyResult("floating body is empty");
    double best = -1e300;
    for (const auto& v : vrep.vertices) best = std::max(best, dot(u, v));
    return best;
}

double delta_cut_offset(const ConvexBody& k, const Vec& u, double delta) {
    double hi = k.support(u);
    double lo = -k.support(scale(u, -1.0));
    const double tol_cut = std::max(1e-9, 1e-4 * delta);
    const double tol_t = 1e-14 * std::max(1.0, hi - lo);
    double cut_mid = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        cut_mid = k.cut_volume_above(u, mid);
        if (std::fabs(cut_mid - delta) <= tol_cut && it > 20) return mid;
        if (cut_mid > delta)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < tol_t) break;
    }
    double mid = 0.5 * (lo + hi);
    if (std::fabs(k.cut_volume_above(u, mid) - delta) > std::max(tol_cut, 1e-7 * delta + 1e-12))
        throw CutVolumeUnresolved("delta_cut_offset: bisection stalled");
    return mid;
}

namespace {

std::vector<Vec> bbox_ring(const ConvexBody& k) {
    auto [lo, hi] = k.bounding_box();
    double mx = 1e-6 * std::max(1.0, dist(lo, hi));
    return {{lo[0] - mx, lo[1] - mx}, {hi[0] + mx, lo[1] - mx}, {hi[0] + mx, hi[1] + mx}, {lo[0] - mx, hi[1] + mx}};
}

// Adaptive supporting-cut construction in the plane. Directions are refined
// where the cut envelope still shaves measurable area, which is what makes
// delta down to 1e-6*vol(P) affordable.
struct Adaptive2DResult {
    std::vector<Vec> ring;
    std::vector<Vec> dirs;
    std::vector<Halfspace> cuts;
};

Adaptive2DResult adaptive_floating_2d(const ConvexBody& k, double delta, int initial,
                                      double shave_tol) {
    Adaptive2DResult out;
    out.ring = bbox_ring(k);
    auto add_cut = [&](double theta) {
        Vec u{std::cos(theta), std::sin(theta)};
        double t = delta_cut_offset(k, u, delta);
        out.dirs.push_back(u);
        out.cuts.push_back({u, t});
        double shaved = 0.0;
        std::vector<Vec> beyond = clip_ring(out.ring, Halfspace{scale(u, -1.0), -t});
        if (beyond.size() >= 3) shaved = std::fabs(shoelace_area(beyond));
        if (shaved > 0.0) {
            auto next = clip_ring(out.ring, Halfspace{u, t});
            if (next.size() >= 3) out.ring = std::move(next);
        }
        return shaved;
    };

    initial = std::max(initial, 64);
    for (int i = 0; i < initial; ++i) add_cut(2.0 * M_PI * i / initial);

    std::deque<std::pair<double, double>> intervals;
    for (int i = 0; i < initial; ++i)
        intervals.push_back({2.0 * M_PI * i / initial, 2.0 * M_PI * (i + 1) / initial});

    const double theta_min = 1e-6;
    const std::size_t max_cuts = 200000;
    while (!intervals.empty() && out.cuts.size() < max_cuts) {
        auto [a, b] = intervals.front();
        intervals.pop_front();
        if (b - a < theta_min) continue;
        double m = 0.5 * (a + b);
        double shaved = add_cut(m);
        if (shaved > shave_tol) {
            intervals.push_back({a, m});
            intervals.push_back({m, b});
        }
    }
    return out;
}

int default_grid(int n, int grid) {
    if (grid > 0) return grid;
    if (n == 2) return 512;
    if (n == 3) return 2048;
    return 4096;
}

} // namespace

FloatingBodyResult floating_body(const ConvexBody& k, double delta, int grid) {
    const int n = k.dim();
    double vol = k.volume();
    if (!(delta > 0.0) || !(delta < 0.5 * vol))
        throw DeltaOutOfRange("floating_body: need 0 < delta < vol(K)/2");

    FloatingBodyResult res;
    res.delta = delta;

    if (const auto* ball = dynamic_cast<const Ball*>(&k)) {
        double r = ball->radius();
        double h = cap_height(n, delta / std::pow(r, n));
        res.exact_ball = true;
        res.ball_center = ball->center();
        res.ball_radius = r * (1.0 - h);
        res.volume = ball_volume(n) * std::pow(res.ball_radius, n);
        res.certified_inner = true;
        return res;
    }

    if (n == 2) {
        bool cheap_cuts = dynamic_cast<const PolytopeBody*>(&k) != nullptr ||
                          dynamic_cast<const Ellipsoid*>(&k) != nullptr;
        if (cheap_cuts) {
            auto a2 = adaptive_floating_2d(k, delta, std::max(grid, 64), 1e-5 * delta);
            res.cuts.dim = 2;
            res.cuts.halfspaces = a2.cuts;
            res.directions = a2.dirs;
            if (a2.ring.size() < 3 || std::fabs(shoelace_area(a2.ring)) < 1e-300) {
                res.empty = true;
                return res;
            }
            res.vrep = polygon_polytope(a2.ring);
            res.volume = volume(res.vrep);
        } else {
            int m = default_grid(2, grid);
            auto dirs = circle_directions(m);
            std::vector<Vec> ring = bbox_ring(k);
            res.cuts.dim = 2;
            for (const auto& u : dirs) {
                double t = delta_cut_offset(k, u, delta);
                res.cuts.halfspaces.push_back({u, t});
                res.directions.push_back(u);
                auto next = clip_ring(ring, Halfspace{u, t});
                if (next.size() < 3) {
                    res.empty = true;
                    return res;
                }
                ring = std::move(next);
            }
            res.vrep = polygon_polytope(ring);
            res.volume = volume(res.vrep);
        }
    } else {
        int m = default_grid(n, grid);
        std::vector<Vec> dirs;
        if (k.centrally_symmetric())
            dirs = symmetrized(sphere_directions(n, (m + 1) / 2));
        else
            dirs = sphere_directions(n, m);
        res.cuts.dim = n;
        for (const auto& u : dirs) {
            double t = delta_cut_offset(k, u, delta);
            res.cuts.halfspaces.push_back({u, t});
            res.directions.push_back(u);
        }
        try {
            res.vrep = to_vpolytope(res.cuts, k.centroid_point());
            res.volume = volume(res.vrep);
        } catch (const EmptyResult&) {
            res.empty = true;
            return res;
        }
    }
    res.certified_inner = true;
    for (const auto& v : res.vrep.vertices)
        if (!k.contains(v, 1e-9)) res.certified_inner = false;
    return res;
}

double floating_volume_loss(const ConvexBody& k, double delta, int grid) {
    const int n = k.dim();
    if (const auto* ball = dynamic_cast<const Ball*>(&k)) {
        double r = ball->radius();
        double h = cap_height(n, delta / std::pow(r, n));
        return ball->volume() * (1.0 - std::pow(1.0 - h, n));
    }
    if (const auto* ell = dynamic_cast<const Ellipsoid*>(&k)) {
        double prod = 1.0;
        for (double a : ell->semiaxes()) prod *= a;
        double h = cap_height(n, delta / prod);
        return ell->volume() * (1.0 - std::pow(1.0 - h, n));
    }
    FloatingBodyResult fb = floating_body(k, delta, grid);
    if (fb.empty) return k.volume();
    return k.volume() - fb.volume;
}

double smooth_floating_rhs(const ConvexBody& k) {
    const int n = k.dim();
    return 0.5 * std::pow((n + 1.0) / ball_volume(n - 1), 2.0 / (n + 1.0)) *
           affine_surface_area(k);
}

std::vector<RateRow> smooth_floating_rate(const ConvexBody& k, const std::vector<double>& deltas) {
    std::vector<RateRow> rows;
    const int n = k.dim();
    for (double d : deltas) {
        RateRow r;
        r.delta = d;
        r.loss = floating_volume_loss(k, d);
        r.ratio = r.loss / std::pow(d, 2.0 / (n + 1.0));
        rows.push_back(r);
    }
    return rows;
}

std::vector<RateRow> polytope_floating_rate(const PolytopeBody& p, const std::vector<double>& deltas,
                                            int grid) {
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (deltas[i] >= deltas[i - 1])
            throw ConfigError("polytope_floating_rate: delta sequence must decrease");
    if (!deltas.empty() && deltas.back() < 1e-6 * p.volume() * (1.0 - 1e-12))
        throw DeltaOutOfRange("polytope_floating_rate: smallest delta below 1e-6 vol(P)");
    std::vector<RateRow> rows;
    const int n = p.dim();
    for (double d : deltas) {
        RateRow r;
        r.delta = d;
        r.loss = floating_volume_loss(p, d, grid);
        r.ratio = r.loss / (d * std::pow(std::log(1.0 / d), n - 1.0));
        rows.push_back(r);
    }
    return rows;
}

double extrapolate_tail(const std::vector<RateRow>& rows) {
    if (rows.size() < 3) throw InsufficientRange("extrapolate_tail: need >= 3 rows");
    double v1 = rows[rows.size() - 3].ratio;
    double v2 = rows[rows.size() - 2].ratio;
    double v3 = rows[rows.size() - 1].ratio;
    double denom = (v3 - v2) - (v2 - v1);
    if (std::fabs(denom) < 1e-15) return v3;
    return v3 - (v3 - v2) * (v3 - v2) / denom;
}

std::vector<double> default_delta_sequence(double volume, double floor_frac) {
    std::vector<double> out;
    for (double d = volume / 100.0; d >= floor_frac * volume * (1.0 - 1e-12); d *= 0.5)
        out.push_back(d);
    return out;
}

FBARun floating_body_algorithm(const ConvexBody& k, double delta, int grid) {
    const int n = k.dim();
    double vol = k.volume();
    if (!(delta > 0.0) || delta > vol / (4.0 * std::exp(4.0)) * (1.0 + 1e-12))
        throw DeltaOutOfRange("floating_body_algorithm: need 0 < delta <= vol(K)/(4 e^4)");

    FBARun run;
    run.delta = delta;
    run.body_volume = vol;

    int m = (grid > 0) ? grid : (n == 2 ? 4096 : (n == 3 ? 2048 : 4096));
    run.directions = sphere_directions(n, m);
    run.kdelta_support.resize(run.directions.size());

    const Ball* ball = dynamic_cast<const Ball*>(&k);
    if (ball) {
        double r = ball->radius();
        double h = cap_height(n, delta / std::pow(r, n));
        double rho = r * (1.0 - h);
        run.kdelta_volume = ball_volume(n) * std::pow(rho, n);
        for (std::size_t i = 0; i < run.directions.size(); ++i)
            run.kdelta_support[i] = dot(ball->center(), run.directions[i]) + rho;
    } else {
        for (std::size_t i = 0; i < run.directions.size(); ++i)
            run.kdelta_support[i] = delta_cut_offset(k, run.directions[i], delta);
        if (n == 2) {
            std::vector<Vec> ring = bbox_ring(k);
            for (std::size_t i = 0; i < run.directions.size(); ++i) {
                ring = clip_ring(ring, Halfspace{run.directions[i], run.kdelta_support[i]});
                if (ring.size() < 3) break;
            }
            run.kdelta_volume = (ring.size() >= 3) ? std::fabs(shoelace_area(ring)) : 0.0;
        } else {
            HPolytope cuts;
            cuts.dim = n;
            for (std::size_t i = 0; i < run.directions.size(); ++i)
                cuts.halfspaces.push_back({run.directions[i], run.kdelta_support[i]});
            try {
                run.kdelta_volume = volume(to_vpolytope(cuts, k.centroid_point()));
            } catch (const EmptyResult&) {
                run.kdelta_volume = 0.0;
            }
        }
    }

    const double scale_tol = 1e-12 * std::max(1.0, k.diameter());
    std::vector<double> best_dot(run.directions.size(), -1e300);
    auto add_vertex = (
        [&](const Vec& x) {
            run.vertices.push_back(x);
            for (std::size_t i = 0; i < run.directions.size(); ++i)
                best_dot[i] = std::max(best_dot[i], dot(run.directions[i], x));
        });

    add_vertex(k.support_point(run.directions[0]));
    const long long guard = 1000000;
    for (long long step = 0; step < guard; ++step) {
        int best = -1;
        double best_gap = scale_tol;
        for (std::size_t i = 0; i < run.directions.size(); ++i) {
            double gap = run.kdelta_support[i] - best_dot[i];
            if (gap > best_gap) {
                best_gap = gap;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) {
            run.terminated = true;
            break;
        }
        run.planes.push_back({run.directions[best], run.kdelta_support[best]});
        add_vertex(k.support_point(run.directions[best]));
    }
    if (!run.terminated)
        throw NonTermination("floating_body_algorithm: step guard reached");
    return run;
}

FBACheck fba_check(const FBARun& run, const ConvexBody& k) {
    FBACheck c;
    const int n = k.dim();
    double sc = std::max(1.0, k.diameter());

    std::vector<double> best_dot(run.directions.size(), -1e300);
    for (const auto& x : run.vertices)
        for (std::size_t i = 0; i < run.directions.size(); ++i)
            best_dot[i] = std::max(best_dot[i], dot(run.directions[i], x));
    c.worst_gap = -1e300;
    for (std::size_t i = 0; i < run.directions.size(); ++i)
        c.worst_gap = std::max(c.worst_gap, run.kdelta_support[i] - best_dot[i]);
    c.inner_containment = c.worst_gap <= 1e-6 * sc;

    c.outer_containment = true;
    for (const auto& x : run.vertices)
        if (!k.on_boundary(x, 1e-9)) c.outer_containment = false;

    double loss = run.body_volume - run.kdelta_volume;
    c.bound_rhs = std::exp(16.0 * n) * loss / (ball_volume(n) * run.delta);
    c.cardinality_bound = static_cast<double>(run.vertices.size()) <= c.bound_rhs;

    c.hull_volume = volume(convex_hull(run.vertices, n, HullOptions{false}));
    return c;
}

std::vector<std::pair<double, double>> fba_volume_curve(const ConvexBody& k,
                                                        const std::vector<long long>& target_sizes) {
    const int n = k.dim();
    double vol = k.volume();
    double d0 = vol / (4.0 * std::exp(4.0));
    std::vector<std::pair<double, double>> out;
    for (std::size_t j = 0; j < target_sizes.size(); ++j) {
        double ratio = static_cast<double>(target_sizes[j]) / static_cast<double>(target_sizes[0]);
        double d = d0 * std::pow(ratio, -(n + 1.0) / (n - 1.0));
        FBARun run = floating_body_algorithm(k, d);
        double hull_vol = volume(convex_hull(run.vertices, n, HullOptions{false}));
        out.push_back({static_cast<double>(run.vertices.size()), vol - hull_vol});
    }
    return out;
}

} // namespace pa

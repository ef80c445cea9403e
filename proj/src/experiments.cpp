#include "polyapprox/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "polyapprox/errors.hpp"
#include "polyapprox/floating.hpp"
#include "polyapprox/geometry.hpp"

namespace pa {

RateFit rate_fit(const std::vector<std::pair<double, double>>& data, RateModel model,
                 int log_power) {
    std::vector<double> ns;
    for (const auto& [n, v] : data) {
        if (v <= 0.0) throw InsufficientRange("rate_fit: values must be positive");
        ns.push_back(n);
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.size() < 5) throw InsufficientRange("rate_fit: need >= 5 distinct N");
    if (ns.back() / ns.front() < std::pow(10.0, 1.5))
        throw InsufficientRange("rate_fit: N range must span >= 1.5 decades");

    const int k = (model == RateModel::PowerWithLog) ? log_power : 0;
    std::vector<double> x, y;
    for (const auto& [n, v] : data) {
        x.push_back(std::log(n));
        y.push_back(std::log(v) - k * std::log(std::log(n)));
    }
    OlsFit f = ols(x, y);
    RateFit r;
    r.model = model;
    r.log_power = k;
    r.exponent = f.slope;
    r.constant = std::exp(f.intercept);
    double t = (f.n > 2) ? t_quantile_975(f.n - 2) : 0.0;
    r.exponent_halfwidth = t * f.slope_se;
    r.log_constant_halfwidth = t * f.intercept_se;
    r.sse = f.sse;
    r.points = f.n;
    r.n_min = ns.front();
    r.n_max = ns.back();
    return r;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("POLYAPPROX_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

std::vector<double> run_trials(long long trials, std::uint64_t seed, int threads,
                               const std::function<double(long long, Rng&)>& f) {
    threads = resolve_threads(threads);
    std::vector<double> out(static_cast<std::size_t>(trials));
    std::atomic<long long> next{0};
    auto worker = [&]() {
        for (;;) {
            long long i = next.fetch_add(1);
            if (i >= trials) break;
            Rng rng(seed, static_cast<std::uint64_t>(i) + 1);
            out[static_cast<std::size_t>(i)] = f(i, rng);
        }
    };
    if (threads <= 1 || trials < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

EstimateRecord estimate_from_trials(const std::vector<double>& values, std::uint64_t seed) {
    EstimateRecord rec;
    auto [mean, sd] = mean_std(values);
    rec.value = mean;
    rec.standard_error = values.size() > 1 ? sd / std::sqrt(static_cast<double>(values.size())) : 0.0;
    rec.samples = static_cast<long long>(values.size());
    rec.seed = seed;
    return rec;
}

EstimateRecord missed_volume(const ConvexBody& k, const Sampler& s, long long n_points,
                             long long trials, std::uint64_t seed, int threads) {
    if (trials < 30) throw ConfigError("missed_volume: trials >= 30 required");
    double vol = k.volume();
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> vals = run_trials(trials, seed, threads, [&](long long, Rng& rng) {
        VPolytope p = random_polytope(s, n_points, rng);
        return vol - volume(p);
    });
    EstimateRecord rec = estimate_from_trials(vals, seed);
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

namespace {

double aitken(double v1, double v2, double v3) {
    double denom = (v3 - v2) - (v2 - v1);
    if (std::fabs(denom) < 1e-300) return v3;
    double ait = v3 - (v3 - v2) * (v3 - v2) / denom;
    // wild extrapolations mean the series is not yet in its asymptotic
    // regime; fall back to the raw tail value
    if (!(std::fabs(ait - v3) < 0.5 * std::fabs(v3))) return v3;
    return ait;
}

// scaled tail values value_i * n_i^{-exponent} / (ln n_i)^k, Aitken on last 3
std::pair<double, double> tail_prefactor(const std::vector<ExperimentPoint>& pts,
                                         double exponent, int log_power) {
    std::vector<double> scaled;
    for (const auto& p : pts)
        scaled.push_back(p.estimate.value * std::pow(p.n, -exponent) /
                         std::pow(std::log(p.n), log_power));
    double raw = scaled.back();
    double ext = scaled.size() >= 3
                     ? aitken(scaled[scaled.size() - 3], scaled[scaled.size() - 2], scaled.back())
                     : raw;
    return {ext, raw};
}

bool log_term_significant(const std::vector<ExperimentPoint>& pts) {
    // F-test: does adding a ln ln N regressor improve the log-log fit at 95%?
    const int m = static_cast<int>(pts.size());
    if (m < 4) return false;
    std::vector<double> x1, x2, y;
    for (const auto& p : pts) {
        x1.push_back(std::log(p.n));
        x2.push_back(std::log(std::log(p.n)));
        y.push_back(std::log(p.estimate.value));
    }
    OlsFit base = ols(x1, y);
    // two-regressor OLS via normal equations
    double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0, sy = 0, s1 = 0, s2 = 0;
    for (int i = 0; i < m; ++i) {
        s1 += x1[i];
        s2 += x2[i];
        sy += y[i];
    }
    double m1 = s1 / m, m2 = s2 / m, my = sy / m;
    for (int i = 0; i < m; ++i) {
        double a = x1[i] - m1, b = x2[i] - m2, c = y[i] - my;
        s11 += a * a;
        s12 += a * b;
        s22 += b * b;
        s1y += a * c;
        s2y += b * c;
    }
    double det2 = s11 * s22 - s12 * s12;
    if (std::fabs(det2) < 1e-12 * s11 * s22 + 1e-300) return false;
    double beta1 = (s22 * s1y - s12 * s2y) / det2;
    double beta2 = (s11 * s2y - s12 * s1y) / det2;
    double sse_full = 0.0;
    for (int i = 0; i < m; ++i) {
        double r = (y[i] - my) - beta1 * (x1[i] - m1) - beta2 * (x2[i] - m2);
        sse_full += r * r;
    }
    if (m <= 3) return false;
    double fstat = (base.sse - sse_full) / (sse_full / (m - 3));
    double t = t_quantile_975(m - 3);
    return fstat > t * t;
}

} // namespace

RateExperimentResult uniform_rate_experiment(const BodyPtr& k, const std::vector<long long>& ns,
                                             long long trials, std::uint64_t seed, int threads) {
    const int n = k->dim();
    if (n != 2 && n != 3) throw ConfigError("uniform_rate_experiment: dim 2 or 3");
    RateExperimentResult res;
    Sampler s = Sampler::uniform_in(k);
    for (std::size_t j = 0; j < ns.size(); ++j) {
        ExperimentPoint p;
        p.n = static_cast<double>(ns[j]);
        p.estimate = missed_volume(*k, s, ns[j], trials, seed + j, threads);
        res.points.push_back(p);
    }
    std::vector<std::pair<double, double>> data;
    for (const auto& p : res.points) data.push_back({p.n, p.estimate.value});
    res.fit = rate_fit(data, RateModel::PurePower);
    auto [ext, raw] = tail_prefactor(res.points, -2.0 / (n + 1.0), 0);
    res.tail_prefactor = ext;
    res.tail_prefactor_raw = raw;
    res.comparison_target = affine_surface_area(*k) / constants("c-uniform", n) *
                            std::pow(k->volume(), 2.0 / (n + 1.0));
    res.log_model_significant = log_term_significant(res.points);
    return res;
}

RateExperimentResult boundary_rate_experiment(const BoundaryDensity& f,
                                              const std::vector<long long>& ns, long long trials,
                                              std::uint64_t seed, int threads) {
    const ConvexBody& k = f.body();
    const int n = k.dim();
    if (n != 2 && n != 3) throw ConfigError("boundary_rate_experiment: dim 2 or 3");
    if (k.kind() != "ball" && k.kind() != "ellipsoid" && k.kind() != "smooth2d")
        throw RollingConditionUnavailable(
            "boundary_rate_experiment: rolling radii need a smooth body");
    RateExperimentResult res;
    Sampler s = Sampler::on_boundary(f);
    for (std::size_t j = 0; j < ns.size(); ++j) {
        ExperimentPoint p;
        p.n = static_cast<double>(ns[j]);
        p.estimate = missed_volume(k, s, ns[j], trials, seed + j, threads);
        res.points.push_back(p);
    }
    std::vector<std::pair<double, double>> data;
    for (const auto& p : res.points) data.push_back({p.n, p.estimate.value});
    res.fit = rate_fit(data, RateModel::PurePower);
    auto [ext, raw] = tail_prefactor(res.points, -2.0 / (n - 1.0), 0);
    res.tail_prefactor = ext;
    res.tail_prefactor_raw = raw;
    if (n == 2) res.comparison_target = constants("c-boundary", n) * holder_functional(f);
    res.log_model_significant = log_term_significant(res.points);
    return res;
}

double holder_functional(const BoundaryDensity& f) {
    const ConvexBody& k = f.body();
    const int n = k.dim();
    if (n != 2) throw KindUnsupported("holder_functional: quadrature implemented for dim 2");
    if (const auto* s2 = dynamic_cast<const SmoothPlanarBody*>(&k)) {
        auto g = [&](double t) {
            Vec x = s2->point(t);
            double kappa = s2->curvature_at(t);
            double den = f.density(x);
            return kappa / (den * den) * s2->speed(t);
        };
        return integrate(g, 0.0, 2.0 * M_PI, 1e-9);
    }
    if (const auto* e = dynamic_cast<const Ellipsoid*>(&k)) {
        double a = e->semiaxes()[0], b = e->semiaxes()[1];
        auto g = [&](double t) {
            Vec x = e->from_sphere({std::cos(t), std::sin(t)});
            double kappa = e->curvature(x);
            double den = f.density(x);
            double speed = std::sqrt(a * a * std::sin(t) * std::sin(t) +
                                     b * b * std::cos(t) * std::cos(t));
            return kappa / (den * den) * speed;
        };
        return integrate(g, 0.0, 2.0 * M_PI, 1e-9);
    }
    if (const auto* ball = dynamic_cast<const Ball*>(&k)) {
        double r = ball->radius();
        auto g = [&](double t) {
            Vec x = add(ball->center(), scale(Vec{std::cos(t), std::sin(t)}, r));
            double den = f.density(x);
            return (1.0 / r) / (den * den) * r;
        };
        return integrate(g, 0.0, 2.0 * M_PI, 1e-9);
    }
    throw KindUnsupported("holder_functional: unsupported body");
}

double holder_rhs(const ConvexBody& k) {
    const int n = k.dim();
    return std::pow(affine_surface_area(k), (n + 1.0) / (n - 1.0));
}

double constants(const std::string& name, int n, double extra) {
    auto fact = [](int m) {
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    if (name == "del-lower")
        return ((n - 1.0) / (n + 1.0)) * std::pow(ball_volume(n - 1), -2.0 / (n - 1.0));
    if (name == "del-upper") {
        double c = (extra > 0.0) ? extra : 1.0;
        return (1.0 + c * std::log(static_cast<double>(n)) / n) * constants("del-lower", n);
    }
    if (name == "del-limit") return 1.0 / (2.0 * M_PI * M_E);
    if (name == "quotient-bound")
        return 1.0 + 2.0 * (M_E - 1.0) * std::log(n + 1.0) / (n - 1.0);
    if (name == "boeroeczky") return ball_volume(n) / (67.0 * M_E * M_E * M_PI * n);
    if (name == "c-uniform") {
        double g = gamma_fn((n * n + 1.0) / (n + 1.0));
        return 2.0 * std::pow(ball_volume(n - 1) / (n + 1.0), 2.0 / (n + 1.0)) *
               ((n + 3.0) * fact(n + 1)) / ((n * n + n + 2.0) * (n * n + 1.0) * g);
    }
    if (name == "c-boundary") {
        double g = gamma_fn(n + 1.0 + 2.0 / (n - 1.0));
        return std::pow(n - 1.0, (n + 1.0) / (n - 1.0)) * g /
               (2.0 * fact(n + 1) * std::pow(sphere_surface(n - 1), 2.0 / (n - 1.0)));
    }
    if (name == "bb-prefactor") {
        if (extra <= 0.0) throw ConfigError("bb-prefactor needs the flag number");
        return extra / (std::pow(n + 1.0, n - 1.0) * fact(n - 1));
    }
    if (name == "kl-cardinality") {
        if (!(extra > 0.0 && extra < M_PI / 2.0)) throw ConfigError("kl-cardinality needs phi");
        return std::pow(1.0 - std::cos(extra), -(n - 1.0) / 2.0) * std::pow(2.0, 0.901 * (n - 1.0));
    }
    throw UnknownConstant("constants: unknown name " + name);
}

double best_polygon_disk(long long n_vertices) {
    if (n_vertices < 3) throw OutOfRange("best_polygon_disk: N >= 3");
    double nn = static_cast<double>(n_vertices);
    return M_PI - 0.5 * nn * std::sin(2.0 * M_PI / nn);
}

VertexRemovalScan vertex_removal_scan(const std::vector<Vec>& points, int dim) {
    const int n = dim;
    if (points.size() > 500) throw ConfigError("vertex_removal_scan: N <= 500");
    if (n > 4) throw ConfigError("vertex_removal_scan: dim <= 4");
    VertexRemovalScan scan;
    VPolytope full = convex_hull(points, n, HullOptions{false});
    double vol = volume(full);
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Vec> rest;
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) rest.push_back(points[j]);
        double v;
        try {
            v = volume(convex_hull(rest, n, HullOptions{false}));
        } catch (const DegenerateInput&) {
            v = 0.0;
        }
        scan.rows.push_back({static_cast<int>(i), std::max(0.0, (vol - v) / vol)});
    }
    std::vector<double> losses;
    for (const auto& r : scan.rows) losses.push_back(r.rel_loss);
    std::sort(losses.begin(), losses.end());
    double eps = scan.epsilon;
    std::size_t idx = static_cast<std::size_t>(
        std::ceil((1.0 - 2.0 * eps) * static_cast<double>(losses.size()))) - 1;
    idx = std::min(idx, losses.size() - 1);
    scan.quantile_loss = losses[idx];
    double expo = (n + 1.0) / (n - 1.0);
    scan.fitted_c0 = scan.quantile_loss * std::pow(points.size(), expo) * std::pow(eps, expo) /
                     (n * n);
    return scan;
}

RateExperimentResult polytope_uniform_rate(const PolytopeBody& p, const std::vector<long long>& ns,
                                           long long trials, std::uint64_t seed, int threads) {
    const int n = p.dim();
    if (n != 2 && n != 3) throw ConfigError("polytope_uniform_rate: dim 2 or 3");
    // normalize to unit volume so the flag-number formula is dimensionless
    double sc = std::pow(p.volume(), -1.0 / n);
    std::vector<Vec> verts;
    for (const auto& v : p.polytope().vertices) verts.push_back(scale(v, sc));
    auto unitp = std::make_shared<PolytopeBody>(convex_hull(verts, n), p.kind());

    RateExperimentResult res;
    Sampler s = Sampler::uniform_in(unitp);
    for (std::size_t j = 0; j < ns.size(); ++j) {
        ExperimentPoint pt;
        pt.n = static_cast<double>(ns[j]);
        pt.estimate = missed_volume(*unitp, s, ns[j], trials, seed + j, threads);
        res.points.push_back(pt);
    }
    std::vector<std::pair<double, double>> data;
    for (const auto& pt : res.points) data.push_back({pt.n, pt.estimate.value});
    res.fit = rate_fit(data, RateModel::PowerWithLog, n - 1);
    auto [ext, raw] = tail_prefactor(res.points, -1.0, n - 1);
    res.tail_prefactor = ext;
    res.tail_prefactor_raw = raw;
    return res;
}

namespace {

bool is_simple_polytope(const PolytopeBody& p) {
    auto mfs = p.facets();
    std::vector<int> count(p.polytope().vertices.size(), 0);
    for (const auto& f : mfs)
        for (int v : f.vertices) ++count[v];
    for (int c : count)
        if (c != p.dim()) return false;
    return true;
}

} // namespace

RateExperimentResult polytope_boundary_rate(const BodyPtr& p, const std::vector<long long>& ns,
                                            long long trials, std::uint64_t seed, int threads) {
    const auto* poly = dynamic_cast<const PolytopeBody*>(p.get());
    if (!poly) throw ConfigError("polytope_boundary_rate: polytopal body required");
    const int n = poly->dim();
    if (n != 2 && n != 3) throw ConfigError("polytope_boundary_rate: dim 2 or 3");
    if (!is_simple_polytope(*poly))
        throw NotSimple("polytope_boundary_rate: polytope is not simple");

    RateExperimentResult res;
    Sampler s = Sampler::on_boundary(BoundaryDensity::uniform(p));
    for (std::size_t j = 0; j < ns.size(); ++j) {
        ExperimentPoint pt;
        pt.n = static_cast<double>(ns[j]);
        pt.estimate = missed_volume(*poly, s, ns[j], trials, seed + j, threads);
        res.points.push_back(pt);
    }
    std::vector<std::pair<double, double>> data;
    for (const auto& pt : res.points) data.push_back({pt.n, pt.estimate.value});
    res.fit = rate_fit(data, RateModel::PurePower);
    auto [ext, raw] = tail_prefactor(res.points, -static_cast<double>(n) / (n - 1.0), 0);
    res.tail_prefactor = ext;
    res.tail_prefactor_raw = raw;
    res.log_model_significant = log_term_significant(res.points);
    return res;
}

CubeCornerResult cube_corner_bound(int n, long long n_points, long long trials,
                                   std::uint64_t seed, int threads) {
    if (n < 2 || n > 4) throw ConfigError("cube_corner_bound: n in {2,3,4}");
    CubeCornerResult out;
    double fact1 = 1.0;
    for (int i = 2; i <= n - 1; ++i) fact1 *= i; // (n-1)!
    double factn = fact1 * n;                     // n!
    double nn = static_cast<double>(n_points);

    double printed_scale = std::pow(fact1 / (n * nn), 1.0 / (n - 1.0));
    out.printed_scale_measure = n * std::pow(printed_scale, n - 1.0) / fact1; // = 1/N
    out.printed_lower_bound = (1.0 / factn) * std::pow(fact1 / (n * nn), n / (n - 1.0));

    // scale chosen so the region has normalized boundary measure exactly 1/N,
    // which is what the (1-1/N)^N statement samples against
    double s_eff = std::pow(2.0 * fact1 / nn, 1.0 / (n - 1.0));
    out.region_fraction = n * std::pow(s_eff, n - 1.0) / fact1 / (2.0 * n);
    out.expected_miss = std::pow(1.0 - 1.0 / nn, static_cast<double>(n_points));

    auto cube = std::make_shared<Cube>(n);
    BoundaryDensity uni = BoundaryDensity::uniform(cube);
    auto in_region = [&](const Vec& x) {
        for (int i = 0; i < n; ++i) {
            if (x[i] > 1e-12) continue; // must lie on a facet through the origin
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += x[j];
            if (s <= s_eff) return true;
        }
        return false;
    };
    std::vector<double> vals = run_trials(trials, seed, threads, [&](long long, Rng& rng) {
        for (long long i = 0; i < n_points; ++i)
            if (in_region(uni.sample(rng))) return 0.0;
        return 1.0;
    });
    auto [mean, sd] = mean_std(vals);
    out.miss_probability.value = mean;
    out.miss_probability.standard_error =
        std::sqrt(std::max(0.0, mean * (1.0 - mean) / static_cast<double>(trials)));
    out.miss_probability.samples = trials;
    out.miss_probability.seed = seed;
    (void)sd;
    return out;
}

RateExperimentResult vertex_count_rate(const BodyPtr& k, const std::vector<long long>& ns,
                                       long long trials, std::uint64_t seed, int threads) {
    const int n = k->dim();
    if (n != 2 && n != 3) throw ConfigError("vertex_count_rate: dim 2 or 3");
    RateExperimentResult res;
    Sampler s = Sampler::uniform_in(k);
    for (std::size_t j = 0; j < ns.size(); ++j) {
        std::vector<double> vals = run_trials(trials, seed + j, threads, [&](long long, Rng& rng) {
            VPolytope p = random_polytope(s, ns[j], rng);
            return static_cast<double>(p.vertices.size());
        });
        ExperimentPoint pt;
        pt.n = static_cast<double>(ns[j]);
        pt.estimate = estimate_from_trials(vals, seed + j);
        res.points.push_back(pt);
    }
    std::vector<std::pair<double, double>> data;
    for (const auto& pt : res.points) data.push_back({pt.n, pt.estimate.value});
    res.fit = rate_fit(data, RateModel::PurePower);
    auto [ext, raw] = tail_prefactor(res.points, (n - 1.0) / (n + 1.0), 0);
    res.tail_prefactor = ext;
    res.tail_prefactor_raw = raw;
    return res;
}

RateExperimentResult fba_smooth_rate(const BodyPtr& k, const std::vector<long long>& ns) {
    RateExperimentResult res;
    auto curve = fba_volume_curve(*k, ns);
    for (const auto& [n, loss] : curve) {
        ExperimentPoint pt;
        pt.n = n;
        pt.estimate.value = loss;
        res.points.push_back(pt);
    }
    std::vector<std::pair<double, double>> data;
    for (const auto& pt : res.points) data.push_back({pt.n, pt.estimate.value});
    res.fit = rate_fit(data, RateModel::PurePower);
    const int n = k->dim();
    auto [ext, raw] = tail_prefactor(res.points, -2.0 / (n - 1.0), 0);
    res.tail_prefactor = ext;
    res.tail_prefactor_raw = raw;
    return res;
}

} // namespace pa

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polyapprox/sampling.hpp"
#include "polyapprox/stats.hpp"

namespace pa {

enum class RateModel { PurePower, PowerWithLog };

// Fitted power law v = C N^b (optionally with a (ln N)^k factor), OLS on
// log-transformed data, 95% half-widths from residual variance.
struct RateFit {
    RateModel model = RateModel::PurePower;
    int log_power = 0;
    double exponent = 0.0;
    double constant = 0.0;
    double exponent_halfwidth = 0.0;
    double log_constant_halfwidth = 0.0;
    double sse = 0.0;
    int points = 0;
    double n_min = 0.0, n_max = 0.0;
};

RateFit rate_fit(const std::vector<std::pair<double, double>>& data, RateModel model,
                 int log_power = 0);

// Deterministic parallel trial map: trial i uses stream i+1 of `seed`,
// results are identical for any thread count.
std::vector<double> run_trials(long long trials, std::uint64_t seed, int threads,
                               const std::function<double(long long, Rng&)>& f);

int resolve_threads(int requested); // 0 -> POLYAPPROX_THREADS or hardware

EstimateRecord estimate_from_trials(const std::vector<double>& values, std::uint64_t seed);

// mean over trials of vol(K) - vol(hull of N draws)
EstimateRecord missed_volume(const ConvexBody& k, const Sampler& s, long long n_points,
                             long long trials, std::uint64_t seed, int threads = 0);

struct ExperimentPoint {
    double n = 0.0;
    EstimateRecord estimate;
};

struct RateExperimentResult {
    std::vector<ExperimentPoint> points;
    RateFit fit;
    double tail_prefactor = 0.0;         // scaled tail value (Aitken-extrapolated)
    double tail_prefactor_raw = 0.0;     // largest-N scaled value
    double comparison_target = 0.0;      // closed-form target when one exists
    bool log_model_significant = false;  // 95% F-test for an extra ln ln N term
};

// Theorem-style uniform model on a smooth body: exponent -2/(n+1), prefactor
// against asa(K) vol(K)^{2/(n+1)} / c(n).
RateExperimentResult uniform_rate_experiment(const BodyPtr& k, const std::vector<long long>& ns,
                                             long long trials, std::uint64_t seed,
                                             int threads = 0);

// Boundary model with density f: exponent -2/(n-1), prefactor against
// c_n int kappa^{1/(n-1)} f^{-2/(n-1)} dmu. Requires a rolling-condition body
// (ball or ellipsoid) or a strictly convex smooth planar body.
RateExperimentResult boundary_rate_experiment(const BoundaryDensity& f,
                                              const std::vector<long long>& ns, long long trials,
                                              std::uint64_t seed, int threads = 0);

// int kappa^{1/(n-1)} / f^{2/(n-1)} dmu by quadrature (dim 2).
double holder_functional(const BoundaryDensity& f);

// Lower bound (int kappa^{1/(n+1)} dmu)^{(n+1)/(n-1)} of the Holder step.
double holder_rhs(const ConvexBody& k);

// Printed-formula constants; UnknownConstant for unrecognized names.
double constants(const std::string& name, int n, double extra = 0.0);

// Missed area of the best inscribed N-gon of the unit disk.
double best_polygon_disk(long long n_vertices);

struct VertexRemovalRow {
    int index = 0;
    double rel_loss = 0.0;
};

struct VertexRemovalScan {
    std::vector<VertexRemovalRow> rows;
    double quantile_loss = 0.0; // smallest v with >= (1-2eps)N losses <= v, eps = 1/4
    double fitted_c0 = 0.0;     // quantile * (N/eps)^{(n+1)/(n-1)} ... / n^2, see impl
    double epsilon = 0.25;
};

// Per-point relative volume loss when dropping one point from the hull.
VertexRemovalScan vertex_removal_scan(const std::vector<Vec>& points, int dim);

// Uniform random points in a polytope normalized to unit volume; model
// N^{-1} (ln N)^{n-1}, constant against flag(P)/((n+1)^{n-1}(n-1)!).
RateExperimentResult polytope_uniform_rate(const PolytopeBody& p, const std::vector<long long>& ns,
                                           long long trials, std::uint64_t seed, int threads = 0);

// Uniform boundary points on a simple polytope; model N^{-n/(n-1)}, no log
// factor. NotSimple when a vertex meets more than n facets.
RateExperimentResult polytope_boundary_rate(const BodyPtr& p, const std::vector<long long>& ns,
                                            long long trials, std::uint64_t seed, int threads = 0);

struct CubeCornerResult {
    EstimateRecord miss_probability;     // no sample hits the corner region
    double expected_miss = 0.0;          // (1 - 1/N)^N
    double printed_lower_bound = 0.0;    // (1/n!) ((n-1)!/(n N))^{n/(n-1)}
    double region_fraction = 0.0;        // normalized boundary measure of the region
    double printed_scale_measure = 0.0;  // unnormalized measure at the printed scale
};

CubeCornerResult cube_corner_bound(int n, long long n_points, long long trials,
                                   std::uint64_t seed, int threads = 0);

// Expected hull vertex count, uniform model: exponent (n-1)/(n+1).
RateExperimentResult vertex_count_rate(const BodyPtr& k, const std::vector<long long>& ns,
                                       long long trials, std::uint64_t seed, int threads = 0);

// d_S(K, P_N) for floating-body-algorithm hulls, fitted as a pure power law.
RateExperimentResult fba_smooth_rate(const BodyPtr& k, const std::vector<long long>& ns);

} // namespace pa

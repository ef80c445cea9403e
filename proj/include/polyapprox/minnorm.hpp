#pragma once

#include <vector>

#include "polyapprox/linalg.hpp"

namespace pa {

struct MinNormResult {
    Vec point;                  // nearest point of conv(pts) to the query
    double distance = 0.0;
    std::vector<int> support;   // indices carrying positive weight
    std::vector<double> weight; // matching convex weights
    int pivots = 0;
};

// Wolfe's min-norm-point algorithm over conv(pts). Exact for polytopes up to
// the stated tolerance; raises NumericalFailure instead of returning a wrong
// value when the pivot budget is exhausted.
MinNormResult min_norm_point(const std::vector<Vec>& pts, const Vec& query,
                             double tol = 1e-12, int max_pivots = 0);

double distance_to_hull(const std::vector<Vec>& pts, const Vec& query);

// Hyperplane strictly separating x from conv(others): <normal,y> <= offset
// for y in conv(others), <normal,x> > offset. Requires positive clearance.
struct Separator {
    Vec normal;     // unit
    double offset = 0.0;
    double clearance = 0.0; // distance from x to conv(others)
};
Separator separating_hyperplane(const Vec& x, const std::vector<Vec>& others,
                                double min_clearance = 1e-10);

} // namespace pa

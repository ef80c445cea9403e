#pragma once

#include <cmath>
#include <vector>

#include "polyapprox/linalg.hpp"
#include "polyapprox/rng.hpp"

namespace pa {

// Deterministic quasi-uniform direction sets. Symmetrized variants come in
// +/- pairs so centrally symmetric constructions stay exactly symmetric.
inline std::vector<Vec> circle_directions(int m) {
    std::vector<Vec> dirs;
    dirs.reserve(m);
    for (int i = 0; i < m; ++i) {
        double t = 2.0 * M_PI * i / m;
        dirs.push_back({std::cos(t), std::sin(t)});
    }
    return dirs;
}

inline std::vector<Vec> fibonacci_sphere(int m) {
    std::vector<Vec> dirs;
    dirs.reserve(m);
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
        double z = 1.0 - (2.0 * i + 1.0) / m;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double t = golden * i;
        dirs.push_back({r * std::cos(t), r * std::sin(t), z});
    }
    return dirs;
}

inline std::vector<Vec> quasi_gaussian_directions(int n, int m, std::uint64_t seed = 2718281828ULL) {
    Rng rng(seed, static_cast<std::uint64_t>(n));
    std::vector<Vec> dirs;
    dirs.reserve(m);
    for (int i = 0; i < m; ++i) dirs.push_back(rng.sphere_dir(n));
    return dirs;
}

inline std::vector<Vec> sphere_directions(int n, int m) {
    if (n == 2) return circle_directions(m);
    if (n == 3) return fibonacci_sphere(m);
    return quasi_gaussian_directions(n, m);
}

inline std::vector<Vec> symmetrized(std::vector<Vec> dirs) {
    std::size_t base = dirs.size();
    for (std::size_t i = 0; i < base; ++i) dirs.push_back(scale(dirs[i], -1.0));
    return dirs;
}

} // namespace pa

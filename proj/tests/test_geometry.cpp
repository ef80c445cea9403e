#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "polyapprox/geometry.hpp"
#include "polyapprox/minnorm.hpp"
#include "polyapprox/polytope.hpp"
#include "polyapprox/rng.hpp"

using namespace pa;

namespace {

std::vector<Vec> cube_corners(int n) {
    std::vector<Vec> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? 1.0 : 0.0;
        pts.push_back(v);
    }
    return pts;
}

std::vector<Vec> cross_polytope_vertices(int n) {
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back(unit(n, i));
        pts.push_back(scale(unit(n, i), -1.0));
    }
    return pts;
}

std::vector<Vec> simplex_points(int n) {
    std::vector<Vec> pts{zeros(n)};
    for (int i = 0; i < n; ++i) pts.push_back(unit(n, i));
    return pts;
}

// O(N^3)-style brute force: v is extreme iff some line through v and another
// point has all remaining points strictly on one side, checked over all
// candidate separators normal to point differences
bool brute_force_extreme_2d(const std::vector<Vec>& pts, std::size_t vi) {
    const Vec& v = pts[vi];
    for (std::size_t j = 0; j < pts.size(); ++j) {
        if (j == vi) continue;
        Vec e = sub(pts[j], v);
        Vec nrm{e[1], -e[0]};
        for (double sgn : {1.0, -1.0}) {
            Vec u = scale(nrm, sgn);
            bool all_below = true;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (k == vi) continue;
                if (dot(u, sub(pts[k], v)) > 1e-12) {
                    all_below = false;
                    break;
                }
            }
            if (all_below) return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("hull removes interior point of the square") {
    std::vector<Vec> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    VPolytope p = convex_hull(pts, 2);
    CHECK(p.vertices.size() == 4);
    for (const auto& q : pts) CHECK(p.contains(q, 1e-9));
}

TEST_CASE("hull of simplex points in R^3") {
    VPolytope p = convex_hull(simplex_points(3), 3);
    CHECK(p.vertices.size() == 4);
    CHECK(merged_facets(p).size() == 4);
}

TEST_CASE("hull of 1000 uniform disk points: every vertex passes the brute-force test") {
    Rng rng(42, 1);
    std::vector<Vec> pts;
    for (int i = 0; i < 1000; ++i) {
        double t = rng.uniform(0.0, 2.0 * M_PI);
        double r = std::sqrt(rng.uniform01());
        pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    VPolytope p = convex_hull(pts, 2);
    for (const auto& v : p.vertices) {
        auto it = std::find(pts.begin(), pts.end(), v);
        REQUIRE(it != pts.end());
        CHECK(brute_force_extreme_2d(pts, static_cast<std::size_t>(it - pts.begin())));
    }
    for (const auto& q : pts) CHECK(p.contains(q, 1e-9));
}

TEST_CASE("hull rejects affinely dependent input") {
    std::vector<Vec> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.3, 0.2, 0}};
    CHECK_THROWS_AS(convex_hull(flat, 3), DegenerateInput);
}

TEST_CASE("hull idempotence") {
    Rng rng(7, 1);
    std::vector<Vec> pts;
    for (int i = 0; i < 60; ++i) pts.push_back(rng.gaussian(3));
    VPolytope p = convex_hull(pts, 3);
    VPolytope q = convex_hull(p.vertices, 3);
    auto sorted = [](std::vector<Vec> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted(p.vertices) == sorted(q.vertices));
}

TEST_CASE("face lattice of the 3-cube") {
    VPolytope p = convex_hull(cube_corners(3), 3);
    FaceLattice l = face_lattice(p);
    CHECK(l.f_vector() == std::vector<int>{8, 12, 6});
    CHECK(euler_relation_holds(l));
}

TEST_CASE("face lattice of the 4-simplex") {
    VPolytope p = convex_hull(simplex_points(4), 4);
    FaceLattice l = face_lattice(p);
    CHECK(l.f_vector() == std::vector<int>{5, 10, 10, 5});
    CHECK(euler_relation_holds(l));
}

TEST_CASE("face lattice of the 3-cross-polytope") {
    VPolytope p = convex_hull(cross_polytope_vertices(3), 3);
    FaceLattice l = face_lattice(p);
    CHECK(l.f_vector() == std::vector<int>{6, 12, 8});
    CHECK(euler_relation_holds(l));
}

TEST_CASE("volumes: cube, simplex, cross-polytope") {
    for (int n = 2; n <= 4; ++n) {
        VPolytope cube = convex_hull(cube_corners(n), n);
        CHECK(volume(cube) == doctest::Approx(1.0).epsilon(1e-10));
    }
    double fact = 1.0;
    for (int n = 2; n <= 4; ++n) {
        fact = 1.0;
        for (int i = 2; i <= n; ++i) fact *= i;
        VPolytope s = convex_hull(simplex_points(n), n);
        CHECK(volume(s) == doctest::Approx(1.0 / fact).epsilon(1e-10));
    }
    VPolytope cp = convex_hull(cross_polytope_vertices(3), 3);
    CHECK(volume(cp) == doctest::Approx(4.0 / 3.0).epsilon(1e-10)); // 2^n/n!
}

TEST_CASE("triangulation volume equals shoelace for small 2D hulls") {
    Rng rng(11, 3);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Vec> pts;
        for (int i = 0; i < 12; ++i) pts.push_back(rng.gaussian(2));
        VPolytope p = convex_hull(pts, 2);
        double tri = 0.0;
        Mat m(2, Vec(2));
        for (const auto& f : p.sfacets) {
            m[0] = sub(p.vertices[f.vtx[0]], p.interior);
            m[1] = sub(p.vertices[f.vtx[1]], p.interior);
            tri += std::fabs(det(m)) / 2.0;
        }
        CHECK(tri == doctest::Approx(std::fabs(shoelace_area(p.vertices))).epsilon(1e-12));
    }
}

TEST_CASE("clip: unit square by x <= 0.5") {
    VPolytope sq = convex_hull(cube_corners(2), 2);
    VPolytope c = clip(sq, Halfspace{{1, 0}, 0.5});
    CHECK(volume(c) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("clip with a containing halfspace returns P unchanged") {
    VPolytope sq = convex_hull(cube_corners(2), 2);
    VPolytope c = clip(sq, Halfspace{{1, 0}, 5.0});
    CHECK(volume(c) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.vertices.size() == 4);
}

TEST_CASE("clip simplex in R^3 by x1+x2+x3 <= 0.5") {
    VPolytope s = convex_hull(simplex_points(3), 3);
    Vec nrm = scale({1, 1, 1}, 1.0 / std::sqrt(3.0));
    VPolytope c = clip(s, Halfspace{nrm, 0.5 / std::sqrt(3.0)});
    CHECK(volume(c) == doctest::Approx(std::pow(0.5, 3) / 6.0).epsilon(1e-9));
}

TEST_CASE("clip additivity on random polytopes, dims 2..4") {
    Rng rng(100, 5);
    for (int n = 2; n <= 4; ++n) {
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<Vec> pts;
            for (int i = 0; i < 4 * n + 4; ++i) pts.push_back(rng.gaussian(n));
            VPolytope p = convex_hull(pts, n);
            Vec u = rng.sphere_dir(n);
            double t = rng.uniform(-0.3, 0.3);
            double below = 0.0, above = 0.0;
            try {
                below = volume(clip(p, Halfspace{u, t}));
            } catch (const EmptyResult&) {
            }
            try {
                above = volume(clip(p, Halfspace{scale(u, -1.0), -t}));
            } catch (const EmptyResult&) {
            }
            CHECK(below + above == doctest::Approx(volume(p)).epsilon(1e-9));
        }
    }
}

TEST_CASE("polar of the symmetric cube is the cross-polytope") {
    std::vector<Vec> corners;
    for (int mask = 0; mask < 8; ++mask) {
        Vec v(3);
        for (int i = 0; i < 3; ++i) v[i] = (mask >> i & 1) ? 1.0 : -1.0;
        corners.push_back(v);
    }
    VPolytope cube = convex_hull(corners, 3);
    VPolytope dual = polar(cube);
    CHECK(dual.vertices.size() == 6);
    CHECK(volume(dual) == doctest::Approx(8.0 / 6.0).epsilon(1e-9));
    for (const auto& v : dual.vertices) CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("polar of the regular hexagon") {
    std::vector<Vec> hex;
    for (int i = 0; i < 6; ++i) {
        double t = 2.0 * M_PI * i / 6.0;
        hex.push_back({std::cos(t), std::sin(t)});
    }
    VPolytope p = convex_hull(hex, 2);
    VPolytope d = polar(p);
    CHECK(d.vertices.size() == 6);
    double want = 2.0 / std::sqrt(3.0);
    for (const auto& v : d.vertices) CHECK(norm2(v) == doctest::Approx(want).epsilon(1e-9));
    // rotated by 30 degrees: dual vertices sit at odd multiples of pi/6
    for (const auto& v : d.vertices) {
        double ang = std::atan2(v[1], v[0]);
        double frac = std::fmod(std::fabs(ang) * 6.0 / M_PI, 2.0);
        CHECK(std::fabs(frac - 1.0) < 1e-9);
    }
}

TEST_CASE("polar involution on a random centered hull") {
    Rng rng(3, 9);
    std::vector<Vec> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(rng.gaussian(3));
    VPolytope p0 = convex_hull(pts, 3);
    Vec c = centroid(p0);
    std::vector<Vec> shifted;
    for (const auto& v : p0.vertices) shifted.push_back(sub(v, c));
    VPolytope p = convex_hull(shifted, 3);
    VPolytope pp = polar(polar(p));
    REQUIRE(pp.vertices.size() == p.vertices.size());
    auto sorted = [](std::vector<Vec> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto a = sorted(p.vertices), b = sorted(pp.vertices);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(dist(a[i], b[i]) < 1e-9 * p.diameter);
}

TEST_CASE("polar requires interior origin") {
    VPolytope sq = convex_hull(cube_corners(2), 2); // [0,1]^2, origin on boundary
    CHECK_THROWS_AS(polar(sq), OriginNotInterior);
}

TEST_CASE("hausdorff distance basics") {
    VPolytope sq = convex_hull(cube_corners(2), 2);
    CHECK(hausdorff_distance(sq, sq) == doctest::Approx(0.0).epsilon(1e-12));

    // square scaled by 2 about its center
    std::vector<Vec> big;
    Vec c{0.5, 0.5};
    for (const auto& v : sq.vertices) big.push_back(add(c, scale(sub(v, c), 2.0)));
    VPolytope sq2 = convex_hull(big, 2);
    CHECK(hausdorff_distance(sq, sq2) == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("hausdorff: regular N-gon against a fine disk proxy") {
    std::vector<Vec> proxy;
    for (int i = 0; i < 4096; ++i) {
        double t = 2.0 * M_PI * i / 4096;
        proxy.push_back({std::cos(t), std::sin(t)});
    }
    VPolytope disk = convex_hull(proxy, 2);
    for (int N : {8, 16, 32}) {
        std::vector<Vec> gon;
        for (int i = 0; i < N; ++i) {
            double t = 2.0 * M_PI * i / N;
            gon.push_back({std::cos(t), std::sin(t)});
        }
        VPolytope p = convex_hull(gon, 2);
        double want = 1.0 - std::cos(M_PI / N);
        CHECK(hausdorff_distance(p, disk) == doctest::Approx(want).epsilon(1e-4));
    }
}

TEST_CASE("metric axioms for hausdorff distance on random triples") {
    Rng rng(21, 2);
    for (int n = 2; n <= 3; ++n) {
        for (int rep = 0; rep < 15; ++rep) {
            auto mk = [&]() {
                std::vector<Vec> pts;
                for (int i = 0; i < 3 * n + 3; ++i) pts.push_back(rng.gaussian(n));
                return convex_hull(pts, n);
            };
            VPolytope a = mk(), b = mk(), c = mk();
            double ab = hausdorff_distance(a, b);
            double ba = hausdorff_distance(b, a);
            double ac = hausdorff_distance(a, c);
            double cb = hausdorff_distance(c, b);
            CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
            CHECK(ab >= 0.0);
            CHECK(ab <= ac + cb + 1e-9);
        }
    }
}

TEST_CASE("min-norm point projection") {
    std::vector<Vec> tri{{0, 0}, {1, 0}, {0, 1}};
    CHECK(distance_to_hull(tri, {2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(distance_to_hull(tri, {0.25, 0.25}) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(distance_to_hull(tri, {1.0, 1.0}) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-10));
}

TEST_CASE("to_vpolytope round-trips the cube") {
    VPolytope cube = convex_hull(cube_corners(3), 3);
    HPolytope h = to_hpolytope(cube);
    CHECK(h.halfspaces.size() == 6);
    VPolytope back = to_vpolytope(h, Vec{0.5, 0.5, 0.5});
    CHECK(back.vertices.size() == 8);
    CHECK(volume(back) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("degenerate hull inputs with collinear edge midpoints are filtered") {
    // cube corners plus an edge midpoint and a facet midpoint
    auto pts = cube_corners(3);
    pts.push_back({0.5, 0.0, 0.0});
    pts.push_back({0.5, 0.5, 0.0});
    VPolytope p = convex_hull(pts, 3);
    CHECK(p.vertices.size() == 8);
    FaceLattice l = face_lattice(p);
    CHECK(l.f_vector() == std::vector<int>{8, 12, 6});
}

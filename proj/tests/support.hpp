#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "wulff/geometry.hpp"
#include "wulff/measures.hpp"
#include "wulff/solver.hpp"

namespace testsup {

inline wulff::HPolytope unit_square() {
    return wulff::HPolytope(
        {wulff::Direction(1, 0), wulff::Direction(-1, 0), wulff::Direction(0, 1),
         wulff::Direction(0, -1)},
        {1.0, 1.0, 1.0, 1.0});
}

inline wulff::HPolytope cube(double half_width = 1.0) {
    return wulff::HPolytope(
        {wulff::Direction(1, 0, 0), wulff::Direction(-1, 0, 0), wulff::Direction(0, 1, 0),
         wulff::Direction(0, -1, 0), wulff::Direction(0, 0, 1), wulff::Direction(0, 0, -1)},
        std::vector<double>(6, half_width));
}

inline wulff::HPolytope octahedron() {
    std::vector<wulff::Direction> normals;
    for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0})
            for (double sz : {1.0, -1.0}) normals.push_back(wulff::Direction(sx, sy, sz));
    return wulff::HPolytope(normals, std::vector<double>(8, 1.0 / std::sqrt(3.0)));
}

// regular n-gon inscribed polytope of the radius-r disk (supports all r)
inline wulff::HPolytope disk_ngon(int n, double r = 1.0) {
    std::vector<wulff::Direction> normals;
    std::vector<double> supports;
    for (int k = 0; k < n; ++k) {
        normals.push_back(wulff::Direction::from_angle(2.0 * M_PI * k / n));
        supports.push_back(r);
    }
    return wulff::HPolytope(std::move(normals), std::move(supports));
}

// jittered-grid angles: gaps stay within [0.8, 1.2] * (2*pi/m)
inline std::vector<double> spread_angles(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double offset = uni(rng) * 2.0 * M_PI;
    std::vector<double> angles(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) {
        double a = offset + 2.0 * M_PI * (k + 0.4 + 0.2 * uni(rng)) / m;
        angles[static_cast<size_t>(k)] = std::fmod(a, 2.0 * M_PI);
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

// polygon with well-separated normals and every facet alive with margin
inline wulff::HPolytope random_polygon(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> logh(-0.03, 0.03);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const std::vector<double> angles = spread_angles(rng, m);
        std::vector<wulff::Direction> normals;
        std::vector<double> supports;
        for (double a : angles) {
            normals.push_back(wulff::Direction::from_angle(a));
            supports.push_back(std::exp(logh(rng)));
        }
        try {
            wulff::HPolytope P(normals, supports);
            bool live = true;
            for (int i = 0; i < m; ++i)
                if (wulff::face_assign(P, P.normal(i)) != i) live = false;
            if (live) return P;
        } catch (const wulff::Error&) {
        }
    }
    throw std::runtime_error("random_polygon: no valid sample");
}

inline wulff::DiscreteMeasure random_measure(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> logw(std::log(0.5), std::log(2.0));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const std::vector<double> angles = spread_angles(rng, m);
        wulff::DiscreteMeasure mu;
        for (double a : angles) {
            mu.directions.push_back(wulff::Direction::from_angle(a));
            mu.weights.push_back(std::exp(logw(rng)));
        }
        const wulff::ConcentrationCheck cc =
            wulff::check_not_concentrated(mu, wulff::make_rule(2, 1024));
        if (cc.ok && cc.worst > 0.05 * mu.total()) return mu;
    }
    throw std::runtime_error("random_measure: no valid sample");
}

// random-support polytope on a fixed spread of 3-D normals, all facets alive
inline wulff::HPolytope random_polytope3(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> logh(std::log(0.85), std::log(1.2));
    const std::vector<wulff::Direction> normals = wulff::direction_grid(3, m);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> supports;
        for (int i = 0; i < m; ++i) supports.push_back(std::exp(logh(rng)));
        try {
            wulff::HPolytope P(normals, supports);
            bool live = true;
            for (int i = 0; i < m; ++i)
                if (wulff::face_assign(P, P.normal(i)) != i) live = false;
            if (live) return P;
        } catch (const wulff::Error&) {
        }
    }
    throw std::runtime_error("random_polytope3: no valid sample");
}

// support function from an explicit vertex list (oracle path)
inline double support_from_vertices(const std::vector<wulff::Vec>& verts,
                                    const wulff::Direction& u) {
    double best = -1e300;
    for (const wulff::Vec& v : verts) best = std::max(best, wulff::dot(v, u));
    return best;
}

}  // namespace testsup

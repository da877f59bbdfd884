#include "wulff/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "wulff/errors.hpp"

namespace wulff {

GaussRule gauss_legendre(int order) {
    if (order < 1) throw Error("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-based initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[static_cast<size_t>(i)] = -x;
        rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<size_t>(i)] = w;
        rule.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return rule;
}

SphericalRule make_rule(int dim, int resolution) {
    if (dim != 2 && dim != 3) throw UnsupportedDimension("make_rule: dim must be 2 or 3");
    if (resolution < 1) throw Error("make_rule: resolution must be >= 1");
    SphericalRule rule;
    rule.dim = dim;
    if (dim == 2) {
        const double w = 2.0 * M_PI / resolution;
        rule.nodes.reserve(static_cast<size_t>(resolution));
        for (int k = 0; k < resolution; ++k) {
            rule.nodes.push_back(Direction::from_angle(w * k));
            rule.weights.push_back(w);
        }
    } else {
        const int n_polar = resolution;
        const int n_azimuth = 2 * resolution;
        const GaussRule gl = gauss_legendre(n_polar);
        const double wphi = 2.0 * M_PI / n_azimuth;
        rule.nodes.reserve(static_cast<size_t>(n_polar) * n_azimuth);
        for (int i = 0; i < n_polar; ++i) {
            const double z = gl.nodes[static_cast<size_t>(i)];
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            for (int j = 0; j < n_azimuth; ++j) {
                // half-step offset keeps nodes off the coordinate planes where
                // facet boundaries of symmetric bodies would sit exactly
                const double phi = wphi * (j + 0.5);
                rule.nodes.push_back(Direction(r * std::cos(phi), r * std::sin(phi), z));
                rule.weights.push_back(gl.weights[static_cast<size_t>(i)] * wphi);
            }
        }
    }
    return rule;
}

double integrate(const SphericalRule& rule,
                 const std::function<double(const Direction&)>& f) {
    KahanSum s;
    for (size_t j = 0; j < rule.nodes.size(); ++j) s.add(rule.weights[j] * f(rule.nodes[j]));
    return s.value();
}

ArcPartition arc_partition(const HPolytope& P, int gauss_order) {
    if (P.dim() != 2) throw UnsupportedDimension("arc_partition: 2-D polytopes only");

    // sanity: facets that share a polygon vertex must not be parallel
    for (int i = 0; i < P.facet_count(); ++i)
        for (int j = i + 1; j < P.facet_count(); ++j) {
            const std::vector<int>&li = P.facet_loop(i), &lj = P.facet_loop(j);
            const bool shares =
                std::any_of(li.begin(), li.end(), [&](int v) {
                    return std::find(lj.begin(), lj.end(), v) != lj.end();
                });
            if (shares && std::abs(cross2(P.normal(i).vec(), P.normal(j).vec())) < 1e-13)
                throw DegenerateVertex("arc_partition: adjacent facets are parallel");
        }

    std::vector<double> angles;
    for (const Vec& v : P.vertices()) {
        double a = std::atan2(v[1], v[0]);
        if (a < 0) a += 2.0 * M_PI;
        angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 angles.end());
    if (angles.size() >= 2 && (angles.front() + 2.0 * M_PI) - angles.back() < 1e-12)
        angles.pop_back();
    if (angles.size() < 3)
        throw DegenerateVertex("arc_partition: fewer than 3 distinct vertex directions");

    ArcPartition part;
    part.breakpoints = angles;
    part.gauss = gauss_legendre(gauss_order);
    for (size_t k = 0; k < angles.size(); ++k) {
        const double a = angles[k];
        const double b = (k + 1 < angles.size()) ? angles[k + 1] : angles[0] + 2.0 * M_PI;
        const int owner = face_assign(P, Direction::from_angle(0.5 * (a + b)));
        part.arcs.push_back({a, b, owner});
    }
    return part;
}

double integrate(const ArcPartition& part,
                 const std::function<double(double theta, int owner)>& f) {
    KahanSum s;
    for (const Arc& arc : part.arcs) {
        const double mid = 0.5 * (arc.begin + arc.end);
        const double half = 0.5 * (arc.end - arc.begin);
        for (size_t k = 0; k < part.gauss.nodes.size(); ++k)
            s.add(half * part.gauss.weights[k] * f(mid + half * part.gauss.nodes[k], arc.owner));
    }
    return s.value();
}

}  // namespace wulff

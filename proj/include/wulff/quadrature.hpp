#pragma once

#include <functional>
#include <vector>

#include "wulff/geometry.hpp"
#include "wulff/vec.hpp"

namespace wulff {

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

// Quadrature rule on S^{n-1}; weights carry solid angle, summing to 2*pi (n=2)
// or 4*pi (n=3).
struct SphericalRule {
    int dim;
    std::vector<Direction> nodes;
    std::vector<double> weights;
};

// n=2: uniform angular trapezoid rule with `resolution` nodes.
// n=3: Gauss-Legendre in cos(theta) x uniform azimuth, resolution x 2*resolution.
SphericalRule make_rule(int dim, int resolution);

double integrate(const SphericalRule& rule,
                 const std::function<double(const Direction&)>& f);

// Exact decomposition of S^1 into arcs owned by single facets of a 2-D
// polytope; breakpoints are the vertex directions. Integration is Gauss per
// arc, so piecewise-smooth integrands converge at full order.
struct Arc {
    double begin;  // radians; end > begin
    double end;
    int owner;  // facet index
};

struct ArcPartition {
    std::vector<double> breakpoints;
    std::vector<Arc> arcs;
    GaussRule gauss;  // per-arc rule on [-1,1]
};

ArcPartition arc_partition(const HPolytope& P, int gauss_order = 16);

double integrate(const ArcPartition& part,
                 const std::function<double(double theta, int owner)>& f);

}  // namespace wulff

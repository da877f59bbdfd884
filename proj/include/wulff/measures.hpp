#pragma once

#include <functional>
#include <vector>

#include "wulff/density.hpp"
#include "wulff/geometry.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

// Finite atomic measure on the sphere.
struct DiscreteMeasure {
    std::vector<Direction> directions;
    std::vector<double> weights;

    double total() const {
        KahanSum s;
        for (double w : weights) s.add(w);
        return s.value();
    }
};

// Curvature mass per facet; total is the full-sphere mass.
struct CurvatureResult {
    std::vector<double> per_face;
    double total = 0.0;
};

using SphericalFn = std::function<double(const Direction&)>;

// Weighted volume of the complement: integral of Phi(rho(u), u) du.
double quermass(const HPolytope& K, const Density& d, const SphericalRule& rule);
double quermass(const HPolytope& K, const Density& d, const ArcPartition& part);
double quermass(const StarBody& K, const Density& d, const SphericalRule& rule);

// Facet masses of the curvature measure: integral of phi(rho*u) rho^n over the
// directions whose boundary ray lands on each facet. The arc-partition overload
// is exact per facet in 2-D; the rule overload assigns nodes to facets.
CurvatureResult curvature_measure(const HPolytope& P, const Density& d,
                                  const SphericalRule& rule);
CurvatureResult curvature_measure(const HPolytope& P, const Density& d,
                                  const ArcPartition& part);

// Integral of g against the curvature measure, spherical form:
// integral of g(assigned facet normal) * phi(rho*u) rho^n du.
double integrate_spherical_form(const HPolytope& P, const Density& d, const SphericalFn& g,
                                const SphericalRule& rule);
double integrate_spherical_form(const HPolytope& P, const Density& d, const SphericalFn& g,
                                const ArcPartition& part);

// Same integral, boundary form: sum over facets of
// h_i g(u_i) * integral of phi over the facet.
double integrate_boundary_form(const HPolytope& P, const Density& d, const SphericalFn& g,
                               int facet_gauss_order = 32);

// Facet lengths (2-D) / areas (3-D) at the facet normals; redundant facets
// carry weight zero.
DiscreteMeasure surface_area_measure(const HPolytope& P);

}  // namespace wulff

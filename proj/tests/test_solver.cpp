#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wulff/errors.hpp"
#include "wulff/solver.hpp"

using namespace wulff;

TEST_SUITE_BEGIN("solver");

namespace {

const double kSqrt2 = std::sqrt(2.0);

DiscreteMeasure square_measure(double weight = kSqrt2) {
    return DiscreteMeasure{{Direction(1, 0), Direction(-1, 0), Direction(0, 1),
                            Direction(0, -1)},
                           {weight, weight, weight, weight}};
}

}  // namespace

TEST_CASE("concentration check") {
    const SphericalRule grid = make_rule(2, 2048);

    const DiscreteMeasure half{{Direction(1, 0), Direction(0, 1)}, {1.0, 1.0}};
    const ConcentrationCheck c1 = check_not_concentrated(half, grid);
    CHECK_FALSE(c1.ok);
    CHECK(c1.worst <= 1e-12);
    CHECK(dot(c1.witness, Direction(1, 0)) <= 1e-12);  // witness sees no atom
    CHECK(dot(c1.witness, Direction(0, 1)) <= 1e-12);

    const ConcentrationCheck c2 = check_not_concentrated(square_measure(), grid);
    CHECK(c2.ok);
    // min over xi of sum sqrt(2)*<xi,u_i>_+ is attained at the axes
    CHECK(c2.worst == doctest::Approx(kSqrt2).epsilon(1e-9));

    const DiscreteMeasure single{{Direction(1, 0)}, {2.0}};
    CHECK_FALSE(check_not_concentrated(single, grid).ok);

    // zero set is the single direction -e1: the exact break candidates find it
    const DiscreteMeasure boundary{{Direction(1, 0), Direction(0, 1), Direction(0, -1)},
                                   {1.0, 1.0, 1.0}};
    CHECK_FALSE(check_not_concentrated(boundary, grid).ok);
}

TEST_CASE("objective on raw supports") {
    const DiscreteMeasure mu{{Direction(1, 0), Direction(-1, 0), Direction(0, 1),
                              Direction(0, -1)},
                             {1.0, 1.0, 1.0, 1.0}};
    CHECK(objective_F({1, 1, 1, 1}, mu) == doctest::Approx(0.0));
    CHECK(objective_F({3, 3, 3, 3}, mu) == doctest::Approx(-std::log(3.0)));
    CHECK(objective_F({2, 2, 1, 1}, mu) == doctest::Approx(-std::log(2.0) / 2.0));
    CHECK_THROWS_AS(objective_F({1, -1, 1, 1}, mu), NonPositiveSupport);
}

TEST_CASE("gradient vanishes at the canonical solution") {
    const DiscreteMeasure mu = square_measure();
    const Density d = Density::power_law(2, -1.0);
    const HPolytope sq = testsup::unit_square();  // quermass 4*sqrt(2) = |mu|
    const std::vector<double> g = gradient_logspace(sq, d, mu, arc_partition(sq));
    for (double gi : g) CHECK(std::abs(gi) <= 1e-9);
}

TEST_CASE("gradient pushes a raised facet back and is an ascent direction") {
    const DiscreteMeasure mu = square_measure();
    const Density d = Density::power_law(2, -1.0);
    std::vector<double> h{1.08, 1.0, 1.0, 1.0};
    HPolytope P = project_to_constraint(HPolytope(mu.directions, h), d, mu.total());
    const std::vector<double> g = gradient_logspace(P, d, mu, arc_partition(P));
    CHECK(g[0] < 0.0);

    // tangency: moving along g keeps the constraint to first order, and the
    // objective slope equals |g|^2
    double slope = 0.0;
    for (double gi : g) slope += gi * gi;
    auto objective_along = [&](double s) {
        std::vector<double> ht = P.supports();
        for (size_t i = 0; i < ht.size(); ++i) ht[i] *= std::exp(s * g[i]);
        const HPolytope Q =
            project_to_constraint(HPolytope(mu.directions, ht), d, mu.total());
        return objective_F(Q.supports(), mu);
    };
    const double fd = (objective_along(1e-5) - objective_along(-1e-5)) / 2e-5;
    CHECK(fd == doctest::Approx(slope).epsilon(1e-3));
}

TEST_CASE("projection to the constraint manifold") {
    const Density d = Density::power_law(2, -1.0);
    const HPolytope sq = testsup::unit_square();
    const double target = 4.0 * kSqrt2;
    CHECK(project_to_constraint(sq, d, target).support(0) == doctest::Approx(1.0));
    CHECK(project_to_constraint(sq, d, 2.0 * target).support(0) == doctest::Approx(0.5));

    // numeric density path: bisection against a test-local root oracle
    const Density expd = Density::radial(
        2, [](double r) { return std::exp(-r); },
        TailBounds{1.0, 1.35, -2.0, 0.05, -2.0}, {false, false});
    const HPolytope gon = testsup::disk_ngon(360);
    const QuadratureSpec quad;
    auto value_at = [&](double lambda) {
        const HPolytope Q = gon.scaled(lambda);
        return quermass(Q, expd, arc_partition(Q));
    };
    const double target2 = 4.0 * M_PI / std::exp(1.0);  // analytic V at lambda=1, disk
    const HPolytope projected = project_to_constraint(gon, expd, target2, quad, 1e-12);
    // oracle: plain bisection on the same one-dimensional function
    double lo = 0.25, hi = 4.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (value_at(mid) > target2 ? lo : hi) = mid;
    }
    CHECK(projected.support(0) == doctest::Approx(lo).epsilon(1e-9));
    // the 360-gon sits within polygonization error of the analytic disk value
    CHECK(projected.support(0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("canonical square instance solves immediately and exactly") {
    const DiscreteMeasure mu = square_measure();
    const Density d = Density::power_law(2, -1.0);
    SolverConfig cfg;
    const SolverResult res = solve(mu, d, cfg);
    CHECK(res.converged);
    CHECK(res.iterations <= 200);
    CHECK(res.kkt_residual <= 1e-8);
    CHECK(res.tau == doctest::Approx(1.0));
    for (int i = 0; i < 4; ++i)
        CHECK(res.polytope.support(i) == doctest::Approx(1.0).epsilon(1e-3));
    // the normalized polytope carries the measure itself
    const CurvatureResult curv =
        curvature_measure(res.polytope, d, arc_partition(res.polytope));
    for (size_t i = 0; i < 4; ++i)
        CHECK(curv.per_face[i] == doctest::Approx(mu.weights[i]).epsilon(1e-6));
}

TEST_CASE("uniform fine measure recovers the disk") {
    DiscreteMeasure mu;
    for (int k = 0; k < 360; ++k) {
        mu.directions.push_back(Direction::from_angle(2.0 * M_PI * k / 360.0));
        mu.weights.push_back(2.0 * M_PI / 360.0);
    }
    const Density d = Density::power_law(2, -1.0);
    SolverConfig cfg;
    const SolverResult res = solve(mu, d, cfg);
    CHECK(res.converged);
    for (int i = 0; i < res.polytope.facet_count(); ++i)
        CHECK(res.polytope.support(i) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("asymmetric instance: convergence, feasibility, ascent, live facets") {
    std::mt19937_64 rng(42);
    const DiscreteMeasure mu = testsup::random_measure(rng, 8);
    const Density d = Density::power_law(2, -1.0);
    SolverConfig cfg;
    cfg.tol_kkt = 1e-8;
    cfg.max_iters = 3000;
    const SolverResult res = solve(mu, d, cfg);
    CHECK(res.converged);
    CHECK(res.kkt_residual <= 1e-8);

    for (size_t k = 1; k < res.trace.size(); ++k) {
        CHECK(res.trace[k].objective >= res.trace[k - 1].objective - 1e-12);
        CHECK(std::abs(res.trace[k].constraint_value - mu.total()) <=
              1e-8 * mu.total());
    }
    const CurvatureResult curv =
        curvature_measure(res.polytope, d, arc_partition(res.polytope));
    for (size_t i = 0; i < mu.weights.size(); ++i) {
        CHECK(curv.per_face[i] > 0.0);
        CHECK(curv.per_face[i] == doctest::Approx(mu.weights[i]).epsilon(1e-6));
    }
}

TEST_CASE("scaling equivariance of solutions") {
    std::mt19937_64 rng(9);
    const DiscreteMeasure mu = testsup::random_measure(rng, 6);
    for (double q : {-1.0, -2.0}) {
        const Density d = Density::power_law(2, q);
        SolverConfig cfg;
        cfg.tol_kkt = 1e-10;
        cfg.max_iters = 5000;
        const SolverResult base = solve(mu, d, cfg);
        for (double c : {0.1, 10.0}) {
            DiscreteMeasure scaled = mu;
            for (double& w : scaled.weights) w *= c;
            const SolverResult res = solve(scaled, d, cfg);
            const double factor = std::pow(c, 1.0 / q);
            for (int i = 0; i < res.polytope.facet_count(); ++i)
                CHECK(res.polytope.support(i) ==
                      doctest::Approx(factor * base.polytope.support(i)).epsilon(1e-6));
        }
    }
}

TEST_CASE("multistart probe agreement") {
    const DiscreteMeasure mu = square_measure();
    const Density d = Density::power_law(2, -1.0);
    SolverConfig cfg;
    cfg.tol_kkt = 1e-10;
    cfg.max_iters = 5000;
    cfg.multistart_count = 5;
    const MultistartReport rep = multistart_uniqueness_probe(mu, d, cfg, 1234);
    CHECK(rep.runs.size() == 5);
    CHECK_FALSE(rep.informational_only);
    CHECK(rep.max_pairwise_support_gap <= 1e-4);
    CHECK(rep.max_pairwise_hausdorff <= 1e-4);

    cfg.multistart_count = 1;
    const MultistartReport single = multistart_uniqueness_probe(mu, d, cfg, 1234);
    CHECK(single.max_pairwise_support_gap == doctest::Approx(0.0));
}

TEST_CASE("numeric-density solve targets the normalized problem with tau != 1") {
    // non-homogeneous weight with a divergent origin integral: the constraint
    // projection runs by bisection and the multiplier stays free
    const Density mixed = Density::radial(
        2, [](double r) { return std::pow(r, -3.0) * (1.0 + std::exp(-r)); },
        TailBounds{1.0, 1.37, -2.0, 1.3, -2.0}, {true, true});
    DiscreteMeasure mu = square_measure(1.0);
    mu.weights[0] = 1.05;  // mild asymmetry
    SolverConfig cfg;
    cfg.tol_kkt = 1e-7;
    cfg.max_iters = 500;
    const SolverResult res = solve(mu, mixed, cfg);
    CHECK(res.converged);
    CHECK(res.warnings.empty());

    // the returned polytope stays on the constraint manifold
    const ArcPartition part = arc_partition(res.polytope);
    const double V = quermass(res.polytope, mixed, part);
    CHECK(V == doctest::Approx(mu.total()).epsilon(1e-8));
    // tau carries the mass ratio and differs from 1 here
    const CurvatureResult curv = curvature_measure(res.polytope, mixed, part);
    CHECK(res.tau == doctest::Approx(mu.total() / curv.total));
    CHECK(res.tau != doctest::Approx(1.0).epsilon(1e-3));
    // proportionality at the solution
    for (size_t i = 0; i < mu.weights.size(); ++i)
        CHECK(curv.per_face[i] / curv.total ==
              doctest::Approx(mu.weights[i] / mu.total()).epsilon(1e-6));

    // a weight with a finite origin integral cannot capture the origin: the
    // solver warns that existence is not covered
    const Density leaky = Density::radial(
        2, [](double r) { return std::exp(-r); },
        TailBounds{1.0, 1.35, -2.0, 0.05, -2.0}, {false, false});
    SolverConfig quick;
    quick.max_iters = 0;
    const SolverResult stub = solve(mu, leaky, quick);
    bool warned = false;
    for (const std::string& w : stub.warnings)
        if (w.find("origin-capture") != std::string::npos) warned = true;
    CHECK(warned);
}

TEST_CASE("errors: concentrated measures and bad inputs") {
    const Density d = Density::power_law(2, -1.0);
    SolverConfig cfg;
    const DiscreteMeasure half{{Direction(1, 0), Direction(0, 1)}, {1.0, 1.0}};
    CHECK_THROWS_AS(solve(half, d, cfg), MeasureConcentrated);

    DiscreteMeasure bad = square_measure();
    bad.weights[2] = -1.0;
    CHECK_THROWS_AS(solve(bad, d, cfg), Error);

    const Density no_bounds = Density::general(
        2, [](double t, const Direction&) { return std::exp(-t); }, std::nullopt, {});
    CHECK_THROWS_AS(solve(square_measure(), no_bounds, cfg), NonIntegrableDensity);
}

TEST_CASE("3-D octahedral instance at node-assignment accuracy") {
    DiscreteMeasure mu;
    const HPolytope oct = testsup::octahedron();
    const Density d = Density::power_law(3, -1.0);
    const SphericalRule rule = make_rule(3, 128);
    const CurvatureResult target = curvature_measure(oct, d, rule);
    mu.directions = oct.normals();
    mu.weights = target.per_face;

    SolverConfig cfg;
    // the node-assignment floor of the 3-D rule bounds the reachable residual
    cfg.tol_kkt = 1e-3;
    cfg.quad.resolution_3d = 128;
    cfg.max_iters = 200;
    std::vector<double> h0(8, 1.0);
    h0[0] = 1.4;
    h0[3] = 0.8;
    const SolverResult res = solve(mu, d, cfg, h0);
    CHECK(res.converged);
    // the exact solution of this synthetic instance is the octahedron itself
    for (int i = 0; i < 8; ++i)
        CHECK(res.polytope.support(i) ==
              doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(5e-3));
}

TEST_SUITE_END();

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wulff/density.hpp"
#include "wulff/geometry.hpp"
#include "wulff/measures.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

struct QuadratureSpec {
    int resolution_2d = 2048;
    int resolution_3d = 64;
    int gauss_order = 16;
};

struct SolverConfig {
    double tol_kkt = 1e-8;
    int max_iters = 500;
    double step_init = 1.0;
    double backtrack_ratio = 0.5;
    double constraint_tol = 1e-10;
    QuadratureSpec quad;
    int multistart_count = 5;
};

struct IterRecord {
    double objective;
    double constraint_value;  // quermass at the iterate
    double residual;
};

struct SolverResult {
    HPolytope polytope;
    double tau;
    double objective;
    double kkt_residual;
    int iterations;
    bool converged;
    std::vector<IterRecord> trace;
    std::vector<std::string> warnings;
};

struct ConcentrationCheck {
    bool ok;
    double worst;
    Direction witness;
};

// Positive-part integral test: min over grid (plus exact break directions) of
// sum_i lambda_i <xi, u_i>_+, compared against threshold_factor * |mu|.
ConcentrationCheck check_not_concentrated(const DiscreteMeasure& mu,
                                          const SphericalRule& grid,
                                          double threshold_factor = 1e-10);

// -(1/|mu|) sum_i lambda_i log h_i, on raw support numbers.
double objective_F(const std::vector<double>& h, const DiscreteMeasure& mu);

// Constraint-tangent ascent direction in log-support space: -a + tau_hat * c
// with a = lambda/|mu|, c = per-face curvature / quermass, and tau_hat chosen
// so the directional derivative of log quermass vanishes. Zero at a solution.
std::vector<double> gradient_logspace(const HPolytope& P, const Density& d,
                                      const DiscreteMeasure& mu, const SphericalRule& rule);
std::vector<double> gradient_logspace(const HPolytope& P, const Density& d,
                                      const DiscreteMeasure& mu, const ArcPartition& part);

// Scale P so quermass(lambda * P) = target: closed form for power laws,
// bisection otherwise.
HPolytope project_to_constraint(const HPolytope& P, const Density& d, double target,
                                const QuadratureSpec& quad = {},
                                double constraint_tol = 1e-10);

// Constrained maximization of the log-support objective over Wulff shapes with
// the atoms' directions as normals; returns the polytope, the multiplier tau,
// and the per-iteration trace. Power-law densities are post-normalized so the
// solution carries the measure itself (tau = 1).
SolverResult solve(const DiscreteMeasure& mu, const Density& d, const SolverConfig& cfg,
                   std::optional<std::vector<double>> initial_supports = std::nullopt);

struct MultistartReport {
    std::vector<SolverResult> runs;
    double max_pairwise_hausdorff = 0.0;
    double max_pairwise_support_gap = 0.0;
    bool informational_only = false;  // uniqueness not claimed by the density
};

MultistartReport multistart_uniqueness_probe(const DiscreteMeasure& mu, const Density& d,
                                             const SolverConfig& cfg, std::uint64_t seed);

}  // namespace wulff

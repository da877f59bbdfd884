#include "wulff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "wulff/errors.hpp"

namespace wulff {

namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr double kMinStep = 1e-16;
constexpr double kFacetDeathFraction = 1e-14;

// Per-dimension quadrature front end for the solve loop: exact arc partitions
// per polytope in 2-D, one shared product rule in 3-D.
class EvalContext {
public:
    EvalContext(int dim, const QuadratureSpec& quad) : dim_(dim), quad_(quad) {
        if (dim_ == 3) rule_ = make_rule(3, quad.resolution_3d);
    }

    CurvatureResult curvature(const HPolytope& P) const {
        if (dim_ == 2) return curvature_measure(P, *density_, arc_partition(P, quad_.gauss_order));
        return curvature_measure(P, *density_, rule_);
    }
    double quermass_of(const HPolytope& P) const {
        if (dim_ == 2) return quermass(P, *density_, arc_partition(P, quad_.gauss_order));
        return quermass(P, *density_, rule_);
    }
    void bind(const Density& d) { density_ = &d; }

private:
    int dim_;
    QuadratureSpec quad_;
    SphericalRule rule_;
    const Density* density_ = nullptr;
};

std::vector<double> projected_direction(const CurvatureResult& curv, double V,
                                        const DiscreteMeasure& mu) {
    const double total_mu = mu.total();
    const size_t m = mu.weights.size();
    std::vector<double> a(m), c(m);
    double ac = 0.0, cc = 0.0;
    for (size_t i = 0; i < m; ++i) {
        a[i] = mu.weights[i] / total_mu;
        c[i] = curv.per_face[i] / V;
        ac += a[i] * c[i];
        cc += c[i] * c[i];
    }
    const double tau_hat = (cc > 0) ? ac / cc : 0.0;
    std::vector<double> g(m);
    for (size_t i = 0; i < m; ++i) g[i] = -a[i] + tau_hat * c[i];
    return g;
}

double kkt_residual_of(const CurvatureResult& curv, const DiscreteMeasure& mu) {
    const double total_mu = mu.total();
    double worst = 0.0;
    for (size_t i = 0; i < mu.weights.size(); ++i)
        worst = std::max(worst,
                         std::abs(mu.weights[i] / total_mu - curv.per_face[i] / curv.total));
    return worst;
}

bool any_facet_dead(const CurvatureResult& curv) {
    for (double mass : curv.per_face)
        if (mass < kFacetDeathFraction * curv.total) return true;
    return false;
}

void validate_measure(const DiscreteMeasure& mu) {
    if (mu.directions.empty() || mu.directions.size() != mu.weights.size())
        throw Error("solve: empty or mismatched measure");
    for (double w : mu.weights)
        if (!(w > 0.0) || !std::isfinite(w))
            throw Error("solve: atom weights must be strictly positive");
    for (size_t i = 0; i < mu.directions.size(); ++i)
        for (size_t j = i + 1; j < mu.directions.size(); ++j)
            if (norm(mu.directions[i].vec() - mu.directions[j].vec()) < 1e-12)
                throw Error("solve: duplicate atom directions");
}

}  // namespace

ConcentrationCheck check_not_concentrated(const DiscreteMeasure& mu,
                                          const SphericalRule& grid,
                                          double threshold_factor) {
    if (mu.directions.empty()) throw Error("check_not_concentrated: empty measure");
    // exact break directions in addition to the grid
    std::vector<Direction> candidates = grid.nodes;
    const int dim = mu.directions[0].dim();
    for (const Direction& u : mu.directions) {
        candidates.push_back(u);
        candidates.push_back(Direction(-1.0 * u.vec()));
        if (dim == 2) {
            candidates.push_back(Direction(-u[1], u[0]));
            candidates.push_back(Direction(u[1], -u[0]));
        }
    }
    if (dim == 3) {
        for (size_t i = 0; i < mu.directions.size(); ++i)
            for (size_t j = i + 1; j < mu.directions.size(); ++j) {
                Vec c = cross3(mu.directions[i].vec(), mu.directions[j].vec());
                if (norm(c) > 1e-13) {
                    candidates.push_back(Direction(c));
                    candidates.push_back(Direction(-1.0 * c));
                }
            }
    }

    double worst = std::numeric_limits<double>::infinity();
    Direction witness = candidates.front();
    for (const Direction& xi : candidates) {
        KahanSum s;
        for (size_t i = 0; i < mu.directions.size(); ++i) {
            const double d = dot(xi, mu.directions[i]);
            if (d > 0) s.add(mu.weights[i] * d);
        }
        if (s.value() < worst) {
            worst = s.value();
            witness = xi;
        }
    }
    return {worst > threshold_factor * mu.total(), worst, witness};
}

double objective_F(const std::vector<double>& h, const DiscreteMeasure& mu) {
    if (h.size() != mu.weights.size()) throw Error("objective_F: size mismatch");
    const double total = mu.total();
    KahanSum s;
    for (size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0)) throw NonPositiveSupport("objective_F: supports must be positive");
        s.add(mu.weights[i] * std::log(h[i]));
    }
    return -s.value() / total;
}

namespace {

std::vector<double> gradient_impl(const HPolytope& P, const Density& d,
                                  const DiscreteMeasure& mu, const CurvatureResult& curv,
                                  double V) {
    if (static_cast<size_t>(P.facet_count()) != mu.weights.size())
        throw Error("gradient_logspace: polytope facets must match measure atoms");
    (void)d;
    const double total = mu.total();
    if (std::abs(V - total) > 1e-6 * total)
        throw Error("gradient_logspace: polytope is not on the constraint manifold");
    return projected_direction(curv, V, mu);
}

}  // namespace

std::vector<double> gradient_logspace(const HPolytope& P, const Density& d,
                                      const DiscreteMeasure& mu, const SphericalRule& rule) {
    return gradient_impl(P, d, mu, curvature_measure(P, d, rule), quermass(P, d, rule));
}

std::vector<double> gradient_logspace(const HPolytope& P, const Density& d,
                                      const DiscreteMeasure& mu, const ArcPartition& part) {
    return gradient_impl(P, d, mu, curvature_measure(P, d, part), quermass(P, d, part));
}

HPolytope project_to_constraint(const HPolytope& P, const Density& d, double target,
                                const QuadratureSpec& quad, double constraint_tol) {
    if (!(target > 0)) throw Error("project_to_constraint: target must be positive");
    EvalContext ctx(P.dim(), quad);
    ctx.bind(d);
    const double V = ctx.quermass_of(P);

    if (d.kind() == Density::Kind::PowerLaw)
        return P.scaled(std::pow(V / target, -1.0 / d.q()));

    // quermass(lambda*P) is strictly decreasing in lambda; bracket then bisect
    auto value_at = [&](double lambda) { return ctx.quermass_of(P.scaled(lambda)); };
    double lo = 1.0, hi = 1.0, v_lo = V, v_hi = V;
    int budget = 200;
    while (v_hi > target) {  // body too small: grow
        hi *= 2.0;
        v_hi = value_at(hi);
        if (--budget < 0) throw BisectionBracketFailure("project_to_constraint: no upper bracket");
    }
    while (v_lo < target) {  // body too big: shrink
        lo *= 0.5;
        v_lo = value_at(lo);
        if (--budget < 0) throw BisectionBracketFailure("project_to_constraint: no lower bracket");
    }
    double lambda = 1.0, v = V;
    for (int it = 0; it < 200 && std::abs(v - target) > constraint_tol * target; ++it) {
        lambda = 0.5 * (lo + hi);
        v = value_at(lambda);
        if (v > target)
            lo = lambda;  // still too small
        else
            hi = lambda;
    }
    if (std::abs(v - target) > constraint_tol * target)
        throw BisectionBracketFailure("project_to_constraint: bisection stalled");
    return P.scaled(lambda);
}

SolverResult solve(const DiscreteMeasure& mu, const Density& d, const SolverConfig& cfg,
                   std::optional<std::vector<double>> initial_supports) {
    validate_measure(mu);
    const int dim = mu.directions[0].dim();
    const double total_mu = mu.total();

    std::vector<std::string> warnings;

    const SphericalRule check_grid =
        make_rule(dim, dim == 2 ? cfg.quad.resolution_2d : cfg.quad.resolution_3d);
    const ConcentrationCheck cc = check_not_concentrated(mu, check_grid);
    if (!cc.ok)
        throw MeasureConcentrated("solve: measure concentrated in a closed hemisphere");

    if (d.kind() != Density::Kind::PowerLaw && !d.tail_bounds())
        throw NonIntegrableDensity("solve: density carries no usable tail information");
    if (!d.claims().c2_claimed)
        warnings.push_back("density does not claim the origin-capture condition; "
                           "existence of a solution is not guaranteed");
    if (!d.claim_warning().empty()) warnings.push_back(d.claim_warning());

    EvalContext ctx(dim, cfg.quad);
    ctx.bind(d);
    const bool power = d.kind() == Density::Kind::PowerLaw;
    const double q = power ? d.q() : 0.0;

    std::vector<double> h =
        initial_supports ? *initial_supports : std::vector<double>(mu.weights.size(), 1.0);
    if (h.size() != mu.weights.size()) throw Error("solve: initial supports size mismatch");
    for (double v : h)
        if (!(v > 0.0)) throw NonPositiveSupport("solve: initial supports must be positive");

    // feasibility projection (pure rescaling)
    auto project_supports = [&](std::vector<double>& hh, double V_raw) {
        double lambda;
        if (power) {
            lambda = std::pow(V_raw / total_mu, -1.0 / q);
        } else {
            const HPolytope tmp = project_to_constraint(HPolytope(mu.directions, hh), d,
                                                        total_mu, cfg.quad, cfg.constraint_tol);
            lambda = tmp.support(0) / hh[0];
        }
        for (double& v : hh) v *= lambda;
        return power ? total_mu : ctx.quermass_of(HPolytope(mu.directions, hh));
    };

    HPolytope P(mu.directions, h);
    double V = project_supports(h, ctx.quermass_of(P));
    P = HPolytope(mu.directions, h);
    CurvatureResult curv = ctx.curvature(P);

    std::vector<IterRecord> trace;
    double objective = objective_F(h, mu);
    double residual = kkt_residual_of(curv, mu);
    trace.push_back({objective, V, residual});

    bool converged = residual <= cfg.tol_kkt;
    int iter = 0;
    double step = cfg.step_init;
    std::vector<double> prev_logh, prev_g;

    while (!converged && iter < cfg.max_iters) {
        ++iter;
        const std::vector<double> g = projected_direction(curv, V, mu);
        double slope = 0.0;
        for (double gi : g) slope += gi * gi;
        if (slope < 1e-32) break;  // stationary but not at tolerance

        // Barzilai-Borwein trial step from the last move, with the doubled
        // last accepted step as fallback; Armijo below safeguards either way
        double s = step;
        if (!prev_logh.empty()) {
            double dx_dx = 0.0, dx_dg = 0.0;
            for (size_t i = 0; i < g.size(); ++i) {
                const double dx = std::log(h[i]) - prev_logh[i];
                dx_dx += dx * dx;
                dx_dg += dx * (g[i] - prev_g[i]);
            }
            if (dx_dg < 0.0 && dx_dx > 0.0)
                s = std::min(std::max(dx_dx / -dx_dg, 1e-6), 1e3);
        }
        double g_max = 0.0;
        for (double gi : g) g_max = std::max(g_max, std::abs(gi));
        s = std::min(s, 50.0 / g_max);  // keep exp(s*g) finite
        prev_logh.resize(h.size());
        for (size_t i = 0; i < h.size(); ++i) prev_logh[i] = std::log(h[i]);
        prev_g = g;
        bool accepted = false;
        int backtracks = 0;
        while (s >= kMinStep && backtracks < 40) {
            ++backtracks;
            std::vector<double> h_try(h.size());
            for (size_t i = 0; i < h.size(); ++i) h_try[i] = h[i] * std::exp(s * g[i]);
            double V_try;
            CurvatureResult curv_try;
            try {
                HPolytope P_raw(mu.directions, h_try);
                if (power) {
                    const double V_raw = ctx.quermass_of(P_raw);
                    const CurvatureResult curv_raw = ctx.curvature(P_raw);
                    const double lambda = std::pow(V_raw / total_mu, -1.0 / q);
                    const double factor = std::pow(lambda, q);
                    for (double& v : h_try) v *= lambda;
                    V_try = V_raw * factor;
                    curv_try = curv_raw;
                    for (double& m : curv_try.per_face) m *= factor;
                    curv_try.total *= factor;
                } else {
                    V_try = project_supports(h_try, ctx.quermass_of(P_raw));
                    curv_try = ctx.curvature(HPolytope(mu.directions, h_try));
                }
            } catch (const Error&) {
                s *= cfg.backtrack_ratio;  // numerically unusable trial
                continue;
            }

            // facets may die and re-grow along the way: the raw-support
            // objective pulls a dead facet's support back down until it
            // re-enters, and the stationarity residual cannot vanish while
            // any facet carries no mass
            const double f_try = objective_F(h_try, mu);
            if (f_try >= objective + kArmijoSlope * s * slope) {
                h = std::move(h_try);
                V = V_try;
                curv = std::move(curv_try);
                objective = f_try;
                step = std::min(2.0 * s, 1e3);
                accepted = true;
                break;
            }
            s *= cfg.backtrack_ratio;
        }
        if (!accepted) break;  // line search stalled

        residual = kkt_residual_of(curv, mu);
        trace.push_back({objective, V, residual});
        converged = residual <= cfg.tol_kkt;
    }

    P = HPolytope(mu.directions, h);
    double tau = total_mu / curv.total;
    if (power) {
        // normalize so the polytope carries the measure itself
        const double lambda = std::pow(total_mu / curv.total, 1.0 / q);
        P = P.scaled(lambda);
        tau = 1.0;
    }
    if (!converged) {
        warnings.push_back("solver did not reach the KKT tolerance; best iterate returned");
        if (any_facet_dead(curv))
            warnings.push_back("a facet carries no curvature mass at the final iterate; "
                               "the instance may be invalid");
    }

    return SolverResult{std::move(P), tau,       objective,          residual,
                        iter,         converged, std::move(trace),   std::move(warnings)};
}

MultistartReport multistart_uniqueness_probe(const DiscreteMeasure& mu, const Density& d,
                                             const SolverConfig& cfg, std::uint64_t seed) {
    MultistartReport rep;
    rep.informational_only = !d.claims().strictly_decreasing_phixn;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_scale(std::log(0.25), std::log(4.0));

    for (int run = 0; run < cfg.multistart_count; ++run) {
        std::vector<double> h0(mu.weights.size());
        for (double& v : h0) v = std::exp(log_scale(rng));
        if (run == 0) h0.assign(mu.weights.size(), 1.0);
        rep.runs.push_back(solve(mu, d, cfg, h0));
    }
    for (size_t i = 0; i < rep.runs.size(); ++i)
        for (size_t j = i + 1; j < rep.runs.size(); ++j) {
            rep.max_pairwise_hausdorff =
                std::max(rep.max_pairwise_hausdorff,
                         hausdorff_distance(rep.runs[i].polytope, rep.runs[j].polytope));
            double gap = 0.0;
            for (int k = 0; k < rep.runs[i].polytope.facet_count(); ++k)
                gap = std::max(gap, std::abs(rep.runs[i].polytope.support(k) -
                                             rep.runs[j].polytope.support(k)));
            rep.max_pairwise_support_gap = std::max(rep.max_pairwise_support_gap, gap);
        }
    return rep;
}

}  // namespace wulff

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wulff/density.hpp"
#include "wulff/geometry.hpp"
#include "wulff/measures.hpp"
#include "wulff/solver.hpp"

namespace wulff {

// Outcome of one numerical check; `passed` is recomputable from the other
// fields (see report_recompute_passed).
struct CheckReport {
    std::string name;
    std::vector<double> measured;
    std::vector<double> expected;
    double tolerance = 0.0;
    bool relative = true;
    bool passed = false;
    std::string details;
};

bool report_recompute_passed(const CheckReport& rep);
std::string report_text(const CheckReport& rep);
std::string report_record(const CheckReport& rep);  // one-line machine form

// Central finite differences of t -> quermass of the Wulff shape of
// h * exp(t*g), Richardson-extrapolated over the step ladder, against the
// analytic value -sum_i g_i * per_face_i.
CheckReport variational_check(const HPolytope& P, const Density& d,
                              const std::vector<double>& g,
                              const std::vector<double>& t_values,
                              const QuadratureSpec& quad = {});

// Spherical-form vs boundary-form integration of a suite of test functions.
struct NamedFn {
    std::string name;
    SphericalFn fn;
};
CheckReport integral_forms_check(const HPolytope& P, const Density& d,
                               const std::vector<NamedFn>& g_suite,
                               const QuadratureSpec& quad = {});
std::vector<NamedFn> default_g_suite(const HPolytope& P);

// per_face(lambda*P) vs lambda^q per_face(P), and the same for quermass.
CheckReport homogeneity_check(const HPolytope& P, const Density& d,
                              const std::vector<double>& lambdas,
                              const QuadratureSpec& quad = {});

// Stability of quermass and of a fixed smooth curvature integral under
// support perturbations of shrinking size.
CheckReport convergence_check(const HPolytope& P, const Density& d,
                              const std::vector<double>& eps_values,
                              const QuadratureSpec& quad = {});

// multistart_uniqueness_probe with reporting.
CheckReport uniqueness_check(const DiscreteMeasure& mu, const Density& d,
                             const SolverConfig& cfg, std::uint64_t seed,
                             double tolerance = 1e-4);

}  // namespace wulff

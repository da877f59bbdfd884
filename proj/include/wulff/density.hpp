#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wulff/vec.hpp"

namespace wulff {

// Sufficient decay/growth constants: sup_{|x|>r1} phi(x)|x|^{n-alpha1-1} <= C1
// and inf_{|x|<r1} phi(x)|x|^{n-alpha2-1} >= C2, both alphas < -1.
struct TailBounds {
    double r1;
    double C1;
    double alpha1;
    double C2;
    double alpha2;
};

struct DensityClaims {
    bool c2_claimed = false;
    bool strictly_decreasing_phixn = false;
};

// Positive weight function phi on R^n minus the origin, evaluated as
// phi(t, u) = phi(t*u), plus the regularity the instance claims.
class Density {
public:
    enum class Kind { PowerLaw, Radial, General };
    using Claims = DensityClaims;

    // phi(x) = |x|^{q-n} * phi2(x/|x|), q < 0. Tail bounds and claims follow
    // from the form itself.
    static Density power_law(int dim, double q,
                             std::function<double(const Direction&)> phi2 = {});

    static Density radial(int dim, std::function<double(double)> psi,
                          std::optional<TailBounds> bounds, Claims claims = {});

    static Density general(int dim, std::function<double(double, const Direction&)> phi,
                           std::optional<TailBounds> bounds, Claims claims = {});

    int dim() const { return dim_; }
    Kind kind() const { return kind_; }
    double q() const;                       // PowerLaw only
    double phi2(const Direction& u) const;  // PowerLaw only
    double phi(double t, const Direction& u) const;

    const std::optional<TailBounds>& tail_bounds() const { return bounds_; }
    const Claims& claims() const { return claims_; }
    // result of the construction-time spot check of the
    // strictly_decreasing_phixn claim; empty when the claim held or was absent
    const std::string& claim_warning() const { return claim_warning_; }

private:
    Density() = default;

    int dim_ = 2;
    Kind kind_ = Kind::General;
    double q_ = 0.0;
    std::function<double(const Direction&)> phi2_;
    std::function<double(double)> psi_;
    std::function<double(double, const Direction&)> phi_;
    std::optional<TailBounds> bounds_;
    Claims claims_;
    std::string claim_warning_;

    void spot_check_claims();
};

// Phi(t, u) = integral over r in [t, inf) of phi(r*u) r^{n-1} dr.
// Closed form for power laws; otherwise bound-driven truncation with adaptive
// Gauss panels at relative tolerance rel_tol.
double tail_integral(const Density& d, double t, const Direction& u,
                     double rel_tol = 1e-10);

struct BoundReport {
    int samples = 0;
    double worst_sup_ratio = 0.0;  // max over |x|>r1 of phi|x|^{n-alpha1-1}
    double worst_inf_ratio = 0.0;  // min over |x|<r1 of phi|x|^{n-alpha2-1}
    bool sup_ok = true;
    bool inf_ok = true;
    bool passed() const { return sup_ok && inf_ok; }
};

// Samples both bounds on a log-radius x direction grid; report only.
BoundReport verify_c1_bounds(const Density& d, int samples);

// Weighted volume of the complement of the cone-minus-ball region
// C(u0, a, b0), for each a: the quantity whose divergence as a -> 0+ is the
// origin-capture condition. Caller inspects growth.
std::vector<double> c2_probe(const Density& d, const Direction& u0, double b0,
                             const std::vector<double>& a_sequence, int resolution = 128);

}  // namespace wulff

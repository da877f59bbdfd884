#include "wulff/density.hpp"

#include <cmath>
#include <limits>

#include "wulff/errors.hpp"
#include "wulff/geometry.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

namespace {

void require_dim(int dim) {
    if (dim != 2 && dim != 3) throw UnsupportedDimension("Density: dim must be 2 or 3");
}

void require_tail_sane(const std::optional<TailBounds>& b) {
    if (!b) return;
    if (!(b->r1 > 0) || !(b->C1 > 0) || !(b->C2 > 0))
        throw Error("TailBounds: r1, C1, C2 must be positive");
    if (!(b->alpha1 < -1.0) || !(b->alpha2 < -1.0))
        throw Error("TailBounds: alpha1 and alpha2 must be < -1");
}

double gauss_segment(const GaussRule& g, double a, double b,
                     const std::function<double(double)>& f) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    KahanSum s;
    for (size_t k = 0; k < g.nodes.size(); ++k)
        s.add(half * g.weights[k] * f(mid + half * g.nodes[k]));
    return s.value();
}

// abs_floor spares sub-refinement of segments whose entire contribution is
// negligible against the running global value
double adaptive_segment(const GaussRule& g, double a, double b,
                        const std::function<double(double)>& f, double rel_tol,
                        double abs_floor, int depth) {
    const double whole = gauss_segment(g, a, b, f);
    const double mid = 0.5 * (a + b);
    const double split = gauss_segment(g, a, mid, f) + gauss_segment(g, mid, b, f);
    if (std::abs(split - whole) <= rel_tol * std::abs(split) + abs_floor) return split;
    if (depth <= 0) throw ToleranceNotMet("tail_integral: adaptive refinement exhausted");
    return adaptive_segment(g, a, mid, f, rel_tol, abs_floor, depth - 1) +
           adaptive_segment(g, mid, b, f, rel_tol, abs_floor, depth - 1);
}

}  // namespace

Density Density::power_law(int dim, double q, std::function<double(const Direction&)> phi2) {
    require_dim(dim);
    if (!(q < 0)) throw Error("Density::power_law: q must be negative");
    Density d;
    d.dim_ = dim;
    d.kind_ = Kind::PowerLaw;
    d.q_ = q;
    d.phi2_ = phi2 ? std::move(phi2) : [](const Direction&) { return 1.0; };

    // phi|x|^{n-alpha-1} = phi2 * |x|^{q-alpha-1} is constant in |x| at
    // alpha = q-1 < -1, so the sufficient bounds hold with sampled phi2 range.
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const Direction& u : direction_grid(dim, dim == 2 ? 256 : 1024)) {
        const double v = d.phi2_(u);
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error("Density::power_law: phi2 must be positive and finite");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    d.bounds_ = TailBounds{1.0, 1.125 * hi, q - 1.0, 0.875 * lo, q - 1.0};
    d.claims_ = {true, true};
    return d;
}

Density Density::radial(int dim, std::function<double(double)> psi,
                        std::optional<TailBounds> bounds, Claims claims) {
    require_dim(dim);
    require_tail_sane(bounds);
    if (!psi) throw Error("Density::radial: missing psi");
    Density d;
    d.dim_ = dim;
    d.kind_ = Kind::Radial;
    d.psi_ = std::move(psi);
    d.bounds_ = bounds;
    d.claims_ = claims;
    d.spot_check_claims();
    return d;
}

Density Density::general(int dim, std::function<double(double, const Direction&)> phi,
                         std::optional<TailBounds> bounds, Claims claims) {
    require_dim(dim);
    require_tail_sane(bounds);
    if (!phi) throw Error("Density::general: missing phi");
    Density d;
    d.dim_ = dim;
    d.kind_ = Kind::General;
    d.phi_ = std::move(phi);
    d.bounds_ = bounds;
    d.claims_ = claims;
    d.spot_check_claims();
    return d;
}

double Density::q() const {
    if (kind_ != Kind::PowerLaw) throw Error("Density::q: not a power-law density");
    return q_;
}

double Density::phi2(const Direction& u) const {
    if (kind_ != Kind::PowerLaw) throw Error("Density::phi2: not a power-law density");
    return phi2_(u);
}

double Density::phi(double t, const Direction& u) const {
    if (!(t > 0)) throw Error("Density::phi: t must be positive");
    double v = 0.0;
    switch (kind_) {
        case Kind::PowerLaw:
            v = std::pow(t, q_ - dim_) * phi2_(u);
            break;
        case Kind::Radial:
            v = psi_(t);
            break;
        case Kind::General:
            v = phi_(t, u);
            break;
    }
    // exact zero is tolerated as deep-tail underflow
    if (v < 0.0 || !std::isfinite(v))
        throw Error("Density::phi: weight must be positive and finite");
    return v;
}

void Density::spot_check_claims() {
    if (!claims_.strictly_decreasing_phixn) return;
    const int n_rays = 32, n_radii = 64;
    for (const Direction& u : direction_grid(dim_, n_rays)) {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n_radii; ++k) {
            const double t = std::pow(10.0, -2.0 + 4.0 * k / (n_radii - 1.0));
            const double val = phi(t, u) * std::pow(t, dim_);
            if (!(val < prev)) {
                claim_warning_ =
                    "strictly_decreasing_phixn claim violated near t=" + std::to_string(t);
                return;
            }
            prev = val;
        }
    }
}

double tail_integral(const Density& d, double t, const Direction& u, double rel_tol) {
    if (!(t > 0)) throw Error("tail_integral: t must be positive");
    if (d.kind() == Density::Kind::PowerLaw)
        return d.phi2(u) * (-std::pow(t, d.q()) / d.q());

    if (!d.tail_bounds())
        throw TailNotIntegrable("tail_integral: no tail bounds for numeric density");
    const TailBounds& b = *d.tail_bounds();

    static const GaussRule g16 = gauss_legendre(16);
    const int n = d.dim();
    auto integrand = [&](double r) { return d.phi(r, u) * (n == 2 ? r : r * r); };

    KahanSum total;
    double T = std::max(b.r1, t);
    auto floor_for = [&]() { return 0.01 * rel_tol * total.value() + 1e-300; };
    if (T > t) total.add(adaptive_segment(g16, t, T, integrand, 0.25 * rel_tol, 1e-300, 28));

    auto remainder_bound = [&](double T_) {
        return b.C1 * std::pow(T_, b.alpha1 + 1.0) / (-b.alpha1 - 1.0);
    };
    int budget = 1100;  // T doubles each pass; covers the double range
    int dead_panels = 0;
    while (remainder_bound(T) > rel_tol * total.value() + 1e-300) {
        if (--budget < 0) throw ToleranceNotMet("tail_integral: truncation budget exhausted");
        const double piece =
            adaptive_segment(g16, T, 2.0 * T, integrand, 0.25 * rel_tol, floor_for(), 28);
        total.add(piece);
        T *= 2.0;
        // once panels stop contributing, jump straight to the bound-satisfying
        // truncation radius; the skipped mass stays under the analytic bound
        dead_panels = (piece <= floor_for()) ? dead_panels + 1 : 0;
        if (dead_panels >= 2 && total.value() > 0.0) {
            const double p = -(b.alpha1 + 1.0);
            const double T_needed =
                std::pow(b.C1 / (p * rel_tol * total.value()), 1.0 / p);
            if (T_needed > T) T = T_needed;
        }
    }
    return total.value();
}

BoundReport verify_c1_bounds(const Density& d, int samples) {
    BoundReport rep;
    rep.samples = samples;
    if (samples <= 0) return rep;  // vacuous pass
    if (!d.tail_bounds()) throw Error("verify_c1_bounds: tail bounds required");
    const TailBounds& b = *d.tail_bounds();
    const int n = d.dim();

    const std::vector<Direction> dirs = direction_grid(n, std::max(4, samples));
    rep.worst_sup_ratio = 0.0;
    rep.worst_inf_ratio = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        // radii log-spaced over four decades on each side of r1
        const double step = (samples == 1) ? 0.0 : 4.0 * k / (samples - 1.0);
        const double r_out = b.r1 * std::pow(10.0, 1e-3 + step);
        const double r_in = b.r1 * std::pow(10.0, -1e-3 - step);
        for (const Direction& u : dirs) {
            rep.worst_sup_ratio = std::max(
                rep.worst_sup_ratio, d.phi(r_out, u) * std::pow(r_out, n - b.alpha1 - 1.0));
            rep.worst_inf_ratio = std::min(
                rep.worst_inf_ratio, d.phi(r_in, u) * std::pow(r_in, n - b.alpha2 - 1.0));
        }
    }
    rep.sup_ok = rep.worst_sup_ratio <= b.C1 * (1.0 + 1e-12);
    rep.inf_ok = rep.worst_inf_ratio >= b.C2 * (1.0 - 1e-12);
    return rep;
}

std::vector<double> c2_probe(const Density& d, const Direction& u0, double b0,
                             const std::vector<double>& a_sequence, int resolution) {
    if (!(b0 > 0.0 && b0 < 1.0)) throw Error("c2_probe: b0 must lie in (0,1)");
    for (size_t k = 1; k < a_sequence.size(); ++k)
        if (!(a_sequence[k] < a_sequence[k - 1]))
            throw Error("c2_probe: a_sequence must be decreasing");

    std::vector<double> out;
    out.reserve(a_sequence.size());
    if (d.dim() == 2) {
        const double w = std::acos(b0);
        const double theta0 = u0.angle();
        const GaussRule g = gauss_legendre(std::max(8, resolution));
        for (double a : a_sequence)
            out.push_back(gauss_segment(g, theta0 - w, theta0 + w, [&](double th) {
                return tail_integral(d, a, Direction::from_angle(th));
            }));
    } else {
        // polar cap about u0: z in [b0, 1] Gauss x uniform azimuth
        const Vec& n = u0.vec();
        Vec t1 = std::abs(n[0]) < 0.9 ? cross3(n, Vec(1, 0, 0)) : cross3(n, Vec(0, 1, 0));
        t1 *= 1.0 / norm(t1);
        const Vec t2 = cross3(n, t1);
        const GaussRule g = gauss_legendre(std::max(8, resolution / 2));
        const int n_phi = std::max(16, resolution);
        const double wphi = 2.0 * M_PI / n_phi;
        for (double a : a_sequence) {
            KahanSum s;
            for (size_t i = 0; i < g.nodes.size(); ++i) {
                const double z = 0.5 * (b0 + 1.0) + 0.5 * (1.0 - b0) * g.nodes[i];
                const double wz = 0.5 * (1.0 - b0) * g.weights[i];
                const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                for (int j = 0; j < n_phi; ++j) {
                    const double phi = wphi * j;
                    const Direction u(
                        Vec(z * n[0] + r * (std::cos(phi) * t1[0] + std::sin(phi) * t2[0]),
                            z * n[1] + r * (std::cos(phi) * t1[1] + std::sin(phi) * t2[1]),
                            z * n[2] + r * (std::cos(phi) * t1[2] + std::sin(phi) * t2[2])));
                    s.add(wz * wphi * tail_integral(d, a, u));
                }
            }
            out.push_back(s.value());
        }
    }
    return out;
}

}  // namespace wulff

#include "wulff/measures.hpp"

#include <cmath>

#include "wulff/errors.hpp"

namespace wulff {

namespace {

// 15-point degree-7 rule on the reference triangle; weights sum to 1 and the
// integral is area * sum(w * f).
struct TrianglePoint {
    double w, a, b;  // barycentric coordinates (a, b, 1-a-b)
};
constexpr TrianglePoint kTriangleDeg7[15] = {
    {0.0102558174092 / 2, 1.0000000000000, 0.0000000000000},
    {0.0102558174092 / 2, 0.0000000000000, 0.0000000000000},
    {0.0102558174092 / 2, 0.0000000000000, 1.0000000000000},
    {0.1116047046647 / 2, 0.7839656651012, 0.0421382841642},
    {0.1116047046647 / 2, 0.1738960507345, 0.7839656651012},
    {0.1116047046647 / 2, 0.1738960507345, 0.0421382841642},
    {0.1116047046647 / 2, 0.0421382841642, 0.1738960507345},
    {0.1116047046647 / 2, 0.7839656651012, 0.1738960507345},
    {0.1116047046647 / 2, 0.0421382841642, 0.7839656651012},
    {0.1679775595335 / 2, 0.4743880861752, 0.4743880861752},
    {0.1679775595335 / 2, 0.4743880861752, 0.0512238276497},
    {0.1679775595335 / 2, 0.0512238276497, 0.4743880861752},
    {0.2652238803946 / 2, 0.2385615300181, 0.5228769399639},
    {0.2652238803946 / 2, 0.5228769399639, 0.2385615300181},
    {0.2652238803946 / 2, 0.2385615300181, 0.2385615300181},
};

double psi_value(const HPolytope& P, const Density& d, const Direction& u) {
    const double rho = wulff_radial(P, u);
    return d.phi(rho, u) * std::pow(rho, P.dim());
}

Direction ray_dir(double theta) { return Direction::from_angle(theta); }

// integral of phi over a segment, split at the closest point to the origin so
// the peak of the integrand sits on a panel boundary
double segment_phi_integral(const Density& d, const Vec& a, const Vec& b,
                            const GaussRule& g) {
    const Vec ab = b - a;
    const double len2 = norm2(ab);
    if (len2 <= 0) return 0.0;
    double s_peak = -dot(a, ab) / len2;
    s_peak = std::min(1.0, std::max(0.0, s_peak));
    auto piece = [&](double s0, double s1) {
        if (!(s1 > s0)) return 0.0;
        const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
        KahanSum acc;
        for (size_t k = 0; k < g.nodes.size(); ++k) {
            const double s = mid + half * g.nodes[k];
            const Vec x = a + s * ab;
            const double r = norm(x);
            acc.add(half * g.weights[k] * d.phi(r, Direction(x)));
        }
        return acc.value() * std::sqrt(len2);
    };
    return piece(0.0, s_peak) + piece(s_peak, 1.0);
}

double triangle_phi_rule(const Density& d, const Vec& p0, const Vec& p1, const Vec& p2) {
    const double area = 0.5 * norm(cross3(p1 - p0, p2 - p0));
    if (area <= 0) return 0.0;
    KahanSum acc;
    for (const TrianglePoint& tp : kTriangleDeg7) {
        const Vec x = tp.a * p0 + tp.b * p1 + (1.0 - tp.a - tp.b) * p2;
        acc.add(tp.w * d.phi(norm(x), Direction(x)));
    }
    return area * acc.value();
}

// two levels of uniform 4-way subdivision under the degree-7 rule
double triangle_phi_integral(const Density& d, const Vec& p0, const Vec& p1, const Vec& p2,
                             int level = 2) {
    if (level <= 0) return triangle_phi_rule(d, p0, p1, p2);
    const Vec m01 = 0.5 * (p0 + p1), m12 = 0.5 * (p1 + p2), m20 = 0.5 * (p2 + p0);
    return triangle_phi_integral(d, p0, m01, m20, level - 1) +
           triangle_phi_integral(d, m01, p1, m12, level - 1) +
           triangle_phi_integral(d, m20, m12, p2, level - 1) +
           triangle_phi_integral(d, m01, m12, m20, level - 1);
}

}  // namespace

double quermass(const HPolytope& K, const Density& d, const SphericalRule& rule) {
    KahanSum s;
    for (size_t j = 0; j < rule.nodes.size(); ++j)
        s.add(rule.weights[j] * tail_integral(d, wulff_radial(K, rule.nodes[j]), rule.nodes[j]));
    return s.value();
}

double quermass(const HPolytope& K, const Density& d, const ArcPartition& part) {
    return integrate(part, [&](double theta, int) {
        const Direction u = ray_dir(theta);
        return tail_integral(d, wulff_radial(K, u), u);
    });
}

double quermass(const StarBody& K, const Density& d, const SphericalRule& rule) {
    KahanSum s;
    for (size_t j = 0; j < rule.nodes.size(); ++j)
        s.add(rule.weights[j] * tail_integral(d, K.radial(rule.nodes[j]), rule.nodes[j]));
    return s.value();
}

CurvatureResult curvature_measure(const HPolytope& P, const Density& d,
                                  const SphericalRule& rule) {
    std::vector<KahanSum> acc(static_cast<size_t>(P.facet_count()));
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        const int i = face_assign(P, rule.nodes[j]);
        acc[static_cast<size_t>(i)].add(rule.weights[j] * psi_value(P, d, rule.nodes[j]));
    }
    CurvatureResult out;
    out.per_face.reserve(acc.size());
    KahanSum total;
    for (const KahanSum& a : acc) {
        out.per_face.push_back(a.value());
        total.add(a.value());
    }
    out.total = total.value();
    return out;
}

CurvatureResult curvature_measure(const HPolytope& P, const Density& d,
                                  const ArcPartition& part) {
    std::vector<KahanSum> acc(static_cast<size_t>(P.facet_count()));
    for (const Arc& arc : part.arcs) {
        const double mid = 0.5 * (arc.begin + arc.end);
        const double half = 0.5 * (arc.end - arc.begin);
        KahanSum a;
        for (size_t k = 0; k < part.gauss.nodes.size(); ++k) {
            const double theta = mid + half * part.gauss.nodes[k];
            a.add(half * part.gauss.weights[k] * psi_value(P, d, ray_dir(theta)));
        }
        acc[static_cast<size_t>(arc.owner)].add(a.value());
    }
    CurvatureResult out;
    out.per_face.reserve(acc.size());
    KahanSum total;
    for (const KahanSum& a : acc) {
        out.per_face.push_back(a.value());
        total.add(a.value());
    }
    out.total = total.value();
    return out;
}

double integrate_spherical_form(const HPolytope& P, const Density& d, const SphericalFn& g,
                                const SphericalRule& rule) {
    KahanSum s;
    for (size_t j = 0; j < rule.nodes.size(); ++j)
        s.add(rule.weights[j] * g(P.normal(face_assign(P, rule.nodes[j]))) *
              psi_value(P, d, rule.nodes[j]));
    return s.value();
}

double integrate_spherical_form(const HPolytope& P, const Density& d, const SphericalFn& g,
                                const ArcPartition& part) {
    return integrate(part, [&](double theta, int owner) {
        return g(P.normal(owner)) * psi_value(P, d, ray_dir(theta));
    });
}

double integrate_boundary_form(const HPolytope& P, const Density& d, const SphericalFn& g,
                               int facet_gauss_order) {
    const GaussRule gl = gauss_legendre(facet_gauss_order);
    KahanSum s;
    for (int i = 0; i < P.facet_count(); ++i) {
        const std::vector<int>& loop = P.facet_loop(i);
        double facet_integral = 0.0;
        if (P.dim() == 2) {
            if (loop.size() < 2) continue;  // empty or degenerate facet
            const Vec& a = P.vertices()[static_cast<size_t>(loop.front())];
            const Vec& b = P.vertices()[static_cast<size_t>(loop.back())];
            facet_integral = segment_phi_integral(d, a, b, gl);
        } else {
            if (loop.size() < 3) continue;
            Vec centroid = Vec::zero(3);
            for (int v : loop) centroid += P.vertices()[static_cast<size_t>(v)];
            centroid *= 1.0 / static_cast<double>(loop.size());
            for (size_t k = 0; k < loop.size(); ++k) {
                const Vec& p = P.vertices()[static_cast<size_t>(loop[k])];
                const Vec& q = P.vertices()[static_cast<size_t>(loop[(k + 1) % loop.size()])];
                facet_integral += triangle_phi_integral(d, centroid, p, q);
            }
        }
        s.add(P.support(i) * g(P.normal(i)) * facet_integral);
    }
    return s.value();
}

DiscreteMeasure surface_area_measure(const HPolytope& P) {
    DiscreteMeasure mu;
    mu.directions = P.normals();
    mu.weights.assign(static_cast<size_t>(P.facet_count()), 0.0);
    for (int i = 0; i < P.facet_count(); ++i) {
        const std::vector<int>& loop = P.facet_loop(i);
        if (P.dim() == 2) {
            if (loop.size() < 2) continue;
            const Vec& a = P.vertices()[static_cast<size_t>(loop.front())];
            const Vec& b = P.vertices()[static_cast<size_t>(loop.back())];
            mu.weights[static_cast<size_t>(i)] = norm(b - a);
        } else {
            if (loop.size() < 3) continue;
            Vec centroid = Vec::zero(3);
            for (int v : loop) centroid += P.vertices()[static_cast<size_t>(v)];
            centroid *= 1.0 / static_cast<double>(loop.size());
            double area = 0.0;
            for (size_t k = 0; k < loop.size(); ++k) {
                const Vec& p = P.vertices()[static_cast<size_t>(loop[k])];
                const Vec& q = P.vertices()[static_cast<size_t>(loop[(k + 1) % loop.size()])];
                area += 0.5 * norm(cross3(p - centroid, q - centroid));
            }
            mu.weights[static_cast<size_t>(i)] = area;
        }
    }
    return mu;
}

}  // namespace wulff

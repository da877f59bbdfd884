#include "wulff/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wulff/errors.hpp"

namespace wulff {

namespace {

constexpr double kParallelTol = 1e-13;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::vector<Direction> direction_grid(int dim, int count) {
    if (dim != 2 && dim != 3) throw UnsupportedDimension("direction_grid: dim must be 2 or 3");
    std::vector<Direction> out;
    out.reserve(static_cast<size_t>(count));
    if (dim == 2) {
        for (int k = 0; k < count; ++k)
            out.push_back(Direction::from_angle(2.0 * M_PI * k / count));
    } else {
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            const double z = 1.0 - (2.0 * k + 1.0) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double a = golden * k;
            out.push_back(Direction(r * std::cos(a), r * std::sin(a), z));
        }
    }
    return out;
}

HemisphereMargin hemisphere_margin(const std::vector<Direction>& dirs,
                                   const std::vector<double>& weights,
                                   int grid_resolution) {
    if (dirs.empty() || dirs.size() != weights.size())
        throw Error("hemisphere_margin: empty or mismatched input");
    const int dim = dirs[0].dim();

    std::vector<Direction> candidates = direction_grid(dim, grid_resolution);
    for (const Direction& u : dirs) {
        candidates.push_back(u);
        candidates.push_back(Direction(-1.0 * u.vec()));
        if (dim == 2) {
            candidates.push_back(Direction(-u[1], u[0]));
            candidates.push_back(Direction(u[1], -u[0]));
        }
    }
    if (dim == 3) {
        for (size_t i = 0; i < dirs.size(); ++i)
            for (size_t j = i + 1; j < dirs.size(); ++j) {
                Vec c = cross3(dirs[i].vec(), dirs[j].vec());
                if (norm(c) > kParallelTol) {
                    candidates.push_back(Direction(c));
                    candidates.push_back(Direction(-1.0 * c));
                }
            }
    }

    double worst = std::numeric_limits<double>::infinity();
    Direction witness = candidates.front();
    for (const Direction& xi : candidates) {
        KahanSum s;
        for (size_t i = 0; i < dirs.size(); ++i) {
            const double d = dot(xi, dirs[i]);
            if (d > 0) s.add(weights[i] * d);
        }
        if (s.value() < worst) {
            worst = s.value();
            witness = xi;
        }
    }
    return {worst, witness};
}

HPolytope::HPolytope(std::vector<Direction> normals, std::vector<double> supports)
    : dim_(normals.empty() ? 0 : normals[0].dim()),
      normals_(std::move(normals)),
      supports_(std::move(supports)) {
    if (normals_.empty() || normals_.size() != supports_.size())
        throw InvalidPolytope("HPolytope: empty or mismatched normals/supports");
    if (dim_ != 2 && dim_ != 3) throw InvalidPolytope("HPolytope: dim must be 2 or 3");
    if (static_cast<int>(normals_.size()) < dim_ + 1)
        throw InvalidPolytope("HPolytope: need at least dim+1 facets");
    for (const Direction& u : normals_)
        if (u.dim() != dim_) throw InvalidPolytope("HPolytope: mixed dimensions");
    for (double h : supports_)
        if (!(h > 0.0) || !std::isfinite(h))
            throw InvalidPolytope("HPolytope: supports must be strictly positive");

    std::vector<double> ones(normals_.size(), 1.0);
    const HemisphereMargin m = hemisphere_margin(normals_, ones);
    if (!(m.worst > 1e-10 * static_cast<double>(normals_.size())))
        throw InvalidPolytope("HPolytope: normals concentrated in a closed hemisphere");

    enumerate_vertices();
}

void HPolytope::enumerate_vertices() {
    const size_t m = normals_.size();
    const double scale = std::max(1.0, max_abs(supports_));
    const double feas_tol = 1e-10 * scale;
    const double dedupe_tol = 1e-9 * scale;
    const double member_tol = 1e-8 * scale;

    auto feasible = [&](const Vec& x) {
        for (size_t k = 0; k < m; ++k)
            if (dot(x, normals_[k]) > supports_[k] + feas_tol) return false;
        return true;
    };
    auto push_vertex = [&](const Vec& x) {
        for (const Vec& v : vertices_)
            if (norm(v - x) <= dedupe_tol) return;
        vertices_.push_back(x);
    };

    if (dim_ == 2) {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                const Vec &a = normals_[i].vec(), &b = normals_[j].vec();
                const double det = cross2(a, b);
                if (std::abs(det) < kParallelTol) continue;
                const double hi = supports_[i], hj = supports_[j];
                Vec x((hi * b[1] - hj * a[1]) / det, (a[0] * hj - b[0] * hi) / det);
                if (feasible(x)) push_vertex(x);
            }
    } else {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                for (size_t k = j + 1; k < m; ++k) {
                    const Vec &a = normals_[i].vec(), &b = normals_[j].vec(),
                              &c = normals_[k].vec();
                    const Vec bc = cross3(b, c), ca = cross3(c, a), ab = cross3(a, b);
                    const double det = dot(a, bc);
                    if (std::abs(det) < kParallelTol) continue;
                    Vec x = (1.0 / det) * (supports_[i] * bc + supports_[j] * ca +
                                           supports_[k] * ab);
                    if (feasible(x)) push_vertex(x);
                }
    }
    if (vertices_.empty())
        throw InvalidPolytope("HPolytope: vertex enumeration found no feasible vertex");

    // assign vertices to the facets they lie on, then order each facet loop
    facet_loops_.assign(m, {});
    for (size_t i = 0; i < m; ++i) {
        std::vector<int>& loop = facet_loops_[i];
        for (size_t v = 0; v < vertices_.size(); ++v)
            if (std::abs(dot(vertices_[v], normals_[i]) - supports_[i]) <= member_tol)
                loop.push_back(static_cast<int>(v));
        if (loop.size() < 2) continue;
        if (dim_ == 2) {
            // order the two extreme points along the edge tangent
            const Vec t(-normals_[i][1], normals_[i][0]);
            std::sort(loop.begin(), loop.end(), [&](int p, int q) {
                return dot(vertices_[static_cast<size_t>(p)], t) <
                       dot(vertices_[static_cast<size_t>(q)], t);
            });
        } else {
            Vec centroid = Vec::zero(3);
            for (int v : loop) centroid += vertices_[static_cast<size_t>(v)];
            centroid *= 1.0 / static_cast<double>(loop.size());
            // in-plane basis
            const Vec& n = normals_[i].vec();
            Vec t1 = std::abs(n[0]) < 0.9 ? cross3(n, Vec(1, 0, 0)) : cross3(n, Vec(0, 1, 0));
            t1 *= 1.0 / norm(t1);
            const Vec t2 = cross3(n, t1);
            std::sort(loop.begin(), loop.end(), [&](int p, int q) {
                const Vec dp = vertices_[static_cast<size_t>(p)] - centroid;
                const Vec dq = vertices_[static_cast<size_t>(q)] - centroid;
                return std::atan2(dot(dp, t2), dot(dp, t1)) <
                       std::atan2(dot(dq, t2), dot(dq, t1));
            });
        }
    }
}

HPolytope HPolytope::scaled(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidPolytope("HPolytope::scaled: lambda must be positive");
    HPolytope out;
    out.dim_ = dim_;
    out.normals_ = normals_;
    out.supports_ = supports_;
    for (double& x : out.supports_) x *= lambda;
    out.vertices_ = vertices_;
    for (Vec& v : out.vertices_) v *= lambda;
    out.facet_loops_ = facet_loops_;
    return out;
}

HPolytope HPolytope::with_supports(std::vector<double> supports) const {
    return HPolytope(normals_, std::move(supports));
}

StarBody::StarBody(int dim, std::function<double(const Direction&)> radial)
    : dim_(dim), radial_(std::move(radial)) {
    if (dim_ != 2 && dim_ != 3) throw UnsupportedDimension("StarBody: dim must be 2 or 3");
    if (!radial_) throw Error("StarBody: missing radial function");
}

double StarBody::radial(const Direction& u) const {
    const double r = radial_(u);
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error("StarBody: radial function must be positive and finite");
    return r;
}

double wulff_radial(const HPolytope& P, const Direction& u) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < P.facet_count(); ++i) {
        const double d = dot(u, P.normal(i));
        if (d > 0) best = std::min(best, P.support(i) / d);
    }
    if (!std::isfinite(best))
        throw NoBoundingFacet("wulff_radial: no facet bounds this direction");
    return best;
}

double support_eval(const HPolytope& P, const Direction& v) {
    const std::vector<Vec>& verts = P.vertices();
    if (verts.empty()) throw Unbounded("support_eval: no vertices");
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& x : verts) best = std::max(best, dot(x, v));
    return best;
}

double polar_radial(const HPolytope& P, const Direction& u) {
    return 1.0 / support_eval(P, u);
}

double hull_radial(const std::vector<Direction>& dirs, const std::vector<double>& scales,
                   const Direction& u) {
    if (dirs.size() != scales.size()) throw Error("hull_radial: mismatched input");
    std::vector<double> inv(scales.size());
    for (size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) throw Error("hull_radial: scales must be positive");
        inv[i] = 1.0 / scales[i];
    }
    const HPolytope wulff_of_reciprocal(dirs, std::move(inv));
    return 1.0 / support_eval(wulff_of_reciprocal, u);
}

int face_assign(const HPolytope& P, const Direction& u) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int i = 0; i < P.facet_count(); ++i) {
        const double d = dot(u, P.normal(i));
        if (d > 0) {
            const double r = P.support(i) / d;
            if (r < best) {
                best = r;
                arg = i;
            }
        }
    }
    if (arg < 0) throw NoBoundingFacet("face_assign: no facet bounds this direction");
    return arg;
}

double hausdorff_distance(const HPolytope& P, const HPolytope& Q, int grid_resolution) {
    if (P.dim() != Q.dim()) throw Error("hausdorff_distance: dimension mismatch");
    if (grid_resolution <= 0) grid_resolution = (P.dim() == 2) ? 4096 : 16384;
    double worst = 0.0;
    for (const Direction& u : direction_grid(P.dim(), grid_resolution))
        worst = std::max(worst, std::abs(support_eval(P, u) - support_eval(Q, u)));
    return worst;
}

}  // namespace wulff

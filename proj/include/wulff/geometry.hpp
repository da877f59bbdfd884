#pragma once

#include <functional>
#include <vector>

#include "wulff/vec.hpp"

namespace wulff {

// Uniformly spread unit directions: equal angles (2-D) or a Fibonacci
// lattice (3-D). Deterministic for a given count.
std::vector<Direction> direction_grid(int dim, int count);

// min over candidate directions xi of sum_i w_i * <xi, dirs[i]>_+ .
// Candidates are the grid plus the exact break directions of the integrand,
// so a zero on a single boundary direction is still found.
struct HemisphereMargin {
    double worst;
    Direction witness;
};
HemisphereMargin hemisphere_margin(const std::vector<Direction>& dirs,
                                   const std::vector<double>& weights,
                                   int grid_resolution = 4096);

// Convex polytope given as outer normals and support numbers, origin interior.
// Vertices are enumerated at construction (facet pairs in 2-D, triples in 3-D,
// feasibility-filtered), so redundant halfspaces are allowed and all derived
// queries are cheap. Immutable.
class HPolytope {
public:
    HPolytope(std::vector<Direction> normals, std::vector<double> supports);

    int dim() const { return dim_; }
    int facet_count() const { return static_cast<int>(normals_.size()); }
    const Direction& normal(int i) const { return normals_[static_cast<size_t>(i)]; }
    double support(int i) const { return supports_[static_cast<size_t>(i)]; }
    const std::vector<Direction>& normals() const { return normals_; }
    const std::vector<double>& supports() const { return supports_; }

    const std::vector<Vec>& vertices() const { return vertices_; }
    // vertex ids on facet i, ordered along the facet boundary; empty when the
    // halfspace is redundant
    const std::vector<int>& facet_loop(int i) const {
        return facet_loops_[static_cast<size_t>(i)];
    }

    // dilation reuses the vertex enumeration: vertices scale, loops persist
    HPolytope scaled(double lambda) const;
    HPolytope with_supports(std::vector<double> supports) const;

private:
    HPolytope() = default;

    int dim_ = 0;
    std::vector<Direction> normals_;
    std::vector<double> supports_;
    std::vector<Vec> vertices_;
    std::vector<std::vector<int>> facet_loops_;

    void enumerate_vertices();
};

// Star-shaped body about the origin described by its radial function.
class StarBody {
public:
    StarBody(int dim, std::function<double(const Direction&)> radial);

    int dim() const { return dim_; }
    double radial(const Direction& u) const;

private:
    int dim_;
    std::function<double(const Direction&)> radial_;
};

// rho_P(u) = min over {i : <u,u_i> > 0} of h_i / <u,u_i>
double wulff_radial(const HPolytope& P, const Direction& u);

// h_{[P]}(v) = max over enumerated vertices of <x,v>
double support_eval(const HPolytope& P, const Direction& v);

// rho of the polar body: 1 / support_eval
double polar_radial(const HPolytope& P, const Direction& u);

// radial function of the convex hull of the points scales[i]*dirs[i],
// via the duality hull(f) = wulff(1/f)^polar
double hull_radial(const std::vector<Direction>& dirs, const std::vector<double>& scales,
                   const Direction& u);

// index of the facet met by the ray through u; ties go to the lowest index
int face_assign(const HPolytope& P, const Direction& u);

// sup-norm of the support-function difference over a direction grid
// (a lower bound of the true metric); 0 picks the per-dimension default.
double hausdorff_distance(const HPolytope& P, const HPolytope& Q, int grid_resolution = 0);

}  // namespace wulff

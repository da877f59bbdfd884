#pragma once

#include <iosfwd>
#include <string>

#include "wulff/geometry.hpp"
#include "wulff/measures.hpp"

namespace wulff {

// Polytope text format: `dim`, `normals <count>` followed by one row per
// normal, `supports <count>` followed by one value per line. `#` comments and
// blank lines are ignored.
void write_polytope(std::ostream& os, const HPolytope& P);
std::string polytope_to_string(const HPolytope& P);
HPolytope read_polytope(std::istream& is);
HPolytope read_polytope_file(const std::string& path);
void write_polytope_file(const std::string& path, const HPolytope& P);

// OFF mesh of the vertex enumeration; 2-D polygons become a single ordered
// vertex loop with z = 0.
void write_off(std::ostream& os, const HPolytope& P);
void write_off_file(const std::string& path, const HPolytope& P);

// CSV columns: facet_index, nx, ny[, nz], support, mass.
void write_curvature_csv(std::ostream& os, const HPolytope& P, const CurvatureResult& result);
void write_measure_csv(std::ostream& os, const DiscreteMeasure& mu);

std::string format_double(double x);  // shortest round-trip form used by all writers

}  // namespace wulff

#include "wulff/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "wulff/errors.hpp"

namespace wulff {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

// next non-empty line with comments stripped
bool next_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        return true;
    }
    return false;
}

std::vector<int> polygon_loop(const HPolytope& P) {
    std::vector<int> order(P.vertices().size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec &va = P.vertices()[static_cast<size_t>(a)],
                  &vb = P.vertices()[static_cast<size_t>(b)];
        return std::atan2(va[1], va[0]) < std::atan2(vb[1], vb[0]);
    });
    return order;
}

}  // namespace

void write_polytope(std::ostream& os, const HPolytope& P) {
    os << "dim " << P.dim() << "\n";
    os << "normals " << P.facet_count() << "\n";
    for (int i = 0; i < P.facet_count(); ++i) {
        for (int k = 0; k < P.dim(); ++k) os << (k ? " " : "") << format_double(P.normal(i)[k]);
        os << "\n";
    }
    os << "supports " << P.facet_count() << "\n";
    for (int i = 0; i < P.facet_count(); ++i) os << format_double(P.support(i)) << "\n";
}

std::string polytope_to_string(const HPolytope& P) {
    std::ostringstream os;
    write_polytope(os, P);
    return os.str();
}

HPolytope read_polytope(std::istream& is) {
    std::string line;
    int dim = 0, count = 0;

    if (!next_line(is, line)) throw ParseError("polytope: missing dim");
    if (std::sscanf(line.c_str(), "dim %d", &dim) != 1 || (dim != 2 && dim != 3))
        throw ParseError("polytope: bad dim line: " + line);

    if (!next_line(is, line) || std::sscanf(line.c_str(), "normals %d", &count) != 1 ||
        count <= 0)
        throw ParseError("polytope: bad normals header");
    std::vector<Direction> normals;
    normals.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        if (!next_line(is, line)) throw ParseError("polytope: missing normal row");
        double x = 0, y = 0, z = 0;
        const int got = std::sscanf(line.c_str(), "%lf %lf %lf", &x, &y, &z);
        if (got != dim) throw ParseError("polytope: bad normal row: " + line);
        normals.push_back(dim == 2 ? Direction(x, y) : Direction(x, y, z));
    }

    int scount = 0;
    if (!next_line(is, line) || std::sscanf(line.c_str(), "supports %d", &scount) != 1 ||
        scount != count)
        throw ParseError("polytope: bad supports header");
    std::vector<double> supports;
    supports.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        if (!next_line(is, line)) throw ParseError("polytope: missing support value");
        supports.push_back(std::strtod(line.c_str(), nullptr));
    }
    try {
        return HPolytope(std::move(normals), std::move(supports));
    } catch (const InvalidPolytope& e) {
        throw ParseError(std::string("polytope: ") + e.what());
    }
}

HPolytope read_polytope_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open polytope file: " + path);
    return read_polytope(is);
}

void write_polytope_file(const std::string& path, const HPolytope& P) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write polytope file: " + path);
    write_polytope(os, P);
}

void write_off(std::ostream& os, const HPolytope& P) {
    const std::vector<Vec>& verts = P.vertices();
    os << "OFF\n";
    if (P.dim() == 2) {
        const std::vector<int> loop = polygon_loop(P);
        os << verts.size() << " 1 " << verts.size() << "\n";
        for (int v : loop) {
            const Vec& x = verts[static_cast<size_t>(v)];
            os << format_double(x[0]) << " " << format_double(x[1]) << " 0\n";
        }
        os << loop.size();
        for (size_t k = 0; k < loop.size(); ++k) os << " " << k;
        os << "\n";
        return;
    }
    std::vector<std::vector<int>> faces;
    size_t edges = 0;
    for (int i = 0; i < P.facet_count(); ++i)
        if (P.facet_loop(i).size() >= 3) {
            faces.push_back(P.facet_loop(i));
            edges += P.facet_loop(i).size();
        }
    os << verts.size() << " " << faces.size() << " " << edges / 2 << "\n";
    for (const Vec& x : verts)
        os << format_double(x[0]) << " " << format_double(x[1]) << " " << format_double(x[2])
           << "\n";
    for (const std::vector<int>& f : faces) {
        os << f.size();
        for (int v : f) os << " " << v;
        os << "\n";
    }
}

void write_off_file(const std::string& path, const HPolytope& P) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write OFF file: " + path);
    write_off(os, P);
}

void write_curvature_csv(std::ostream& os, const HPolytope& P, const CurvatureResult& result) {
    os << (P.dim() == 2 ? "facet_index,nx,ny,support,mass\n"
                        : "facet_index,nx,ny,nz,support,mass\n");
    for (int i = 0; i < P.facet_count(); ++i) {
        os << i;
        for (int k = 0; k < P.dim(); ++k) os << "," << format_double(P.normal(i)[k]);
        os << "," << format_double(P.support(i)) << ","
           << format_double(result.per_face[static_cast<size_t>(i)]) << "\n";
    }
}

void write_measure_csv(std::ostream& os, const DiscreteMeasure& mu) {
    const int dim = mu.directions.empty() ? 2 : mu.directions[0].dim();
    os << (dim == 2 ? "facet_index,nx,ny,support,mass\n"
                    : "facet_index,nx,ny,nz,support,mass\n");
    for (size_t i = 0; i < mu.directions.size(); ++i) {
        os << i;
        for (int k = 0; k < dim; ++k) os << "," << format_double(mu.directions[i][k]);
        os << ",0," << format_double(mu.weights[i]) << "\n";
    }
}

}  // namespace wulff

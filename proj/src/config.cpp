#include "wulff/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wulff/errors.hpp"
#include "wulff/io.hpp"

namespace wulff {

namespace {

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_numbers(const std::string& s) {
    std::istringstream is(s);
    std::vector<double> out;
    double x;
    while (is >> x) out.push_back(x);
    return out;
}

Direction parse_direction(int dim, const std::vector<double>& nums, const std::string& ctx) {
    if (static_cast<int>(nums.size()) < dim)
        throw ParseError("config: too few components in " + ctx);
    return dim == 2 ? Direction(nums[0], nums[1]) : Direction(nums[0], nums[1], nums[2]);
}

// inverse-angular-distance blend of tabulated directional values; continuous,
// positive, and matches the table at its nodes
std::function<double(const Direction&)> tabulated_phi2(std::vector<Direction> points,
                                                       std::vector<double> values) {
    return [points = std::move(points), values = std::move(values)](const Direction& u) {
        double wsum = 0.0, vsum = 0.0;
        for (size_t k = 0; k < points.size(); ++k) {
            const double c = std::min(1.0, std::max(-1.0, dot(u, points[k])));
            const double ang = std::acos(c);
            if (ang < 1e-12) return values[k];
            const double w = 1.0 / (ang * ang);
            wsum += w;
            vsum += w * values[k];
        }
        return vsum / wsum;
    };
}

Density parse_density(const ConfigFile& cf, int dim) {
    const std::string kind = cf.get_string("density", "kind", "");
    if (kind.empty()) throw ParseError("config: [density] block with kind is required");

    if (kind == "power") {
        if (!cf.has("density", "q")) throw ParseError("config: power density needs q");
        const double q = cf.get_double("density", "q", -1.0);
        if (!(q < 0)) throw ParseError("config: power density needs q < 0");
        const std::vector<std::string> rows = cf.get_all("density", "phi2_point");
        if (!rows.empty()) {
            std::vector<Direction> pts;
            std::vector<double> vals;
            for (const std::string& row : rows) {
                const std::vector<double> nums = parse_numbers(row);
                if (static_cast<int>(nums.size()) != dim + 1)
                    throw ParseError("config: phi2_point needs direction + value: " + row);
                pts.push_back(parse_direction(dim, nums, "phi2_point"));
                if (!(nums.back() > 0))
                    throw ParseError("config: phi2_point values must be positive");
                vals.push_back(nums.back());
            }
            return Density::power_law(dim, q, tabulated_phi2(std::move(pts), std::move(vals)));
        }
        const double c = cf.get_double("density", "phi2", 1.0);
        if (!(c > 0)) throw ParseError("config: phi2 must be positive");
        return Density::power_law(dim, q, [c](const Direction&) { return c; });
    }

    if (kind == "radial-exp") {
        const double rate = cf.get_double("density", "rate", 1.0);
        const double scale = cf.get_double("density", "scale", 1.0);
        if (!(rate > 0) || !(scale > 0))
            throw ParseError("config: radial-exp needs positive rate and scale");
        if (!cf.has("density", "r1"))
            throw ParseError("config: radial-exp needs tail bounds (r1,c1,alpha1,c2,alpha2)");
        TailBounds tb{cf.get_double("density", "r1", 1.0), cf.get_double("density", "c1", 1.0),
                      cf.get_double("density", "alpha1", -2.0),
                      cf.get_double("density", "c2", 1.0),
                      cf.get_double("density", "alpha2", -2.0)};
        Density::Claims claims;
        claims.c2_claimed = cf.get_bool("density", "c2_claimed", false);
        claims.strictly_decreasing_phixn = cf.get_bool("density", "strictly_decreasing", false);
        return Density::radial(
            dim, [rate, scale](double r) { return scale * std::exp(-rate * r); }, tb, claims);
    }

    throw ParseError("config: unknown density kind: " + kind);
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& is) {
    ConfigFile cf;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("config line " + std::to_string(lineno) + ": bad section");
            section = trim(line.substr(1, line.size() - 2));
            cf.sections_[section];
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        cf.sections_[section].emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cf;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open config file: " + path);
    return parse(is);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return get(section, key).has_value();
}

std::optional<std::string> ConfigFile::get(const std::string& section,
                                           const std::string& key) const {
    const auto it = sections_.find(section);
    if (it == sections_.end()) return std::nullopt;
    std::optional<std::string> out;
    for (const auto& [k, v] : it->second)
        if (k == key) out = v;
    return out;
}

std::vector<std::string> ConfigFile::get_all(const std::string& section,
                                             const std::string& key) const {
    std::vector<std::string> out;
    const auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (const auto& [k, v] : it->second)
        if (k == key) out.push_back(v);
    return out;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    char* end = nullptr;
    const double x = std::strtod(v->c_str(), &end);
    if (end == v->c_str()) throw ParseError("config: bad number for " + section + "." + key);
    return x;
}

int ConfigFile::get_int(const std::string& section, const std::string& key, int fallback) const {
    const auto v = get(section, key);
    return v ? static_cast<int>(get_double(section, key, fallback)) : fallback;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ParseError("config: bad boolean for " + section + "." + key);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return get(section, key).value_or(fallback);
}

RunConfig parse_run_config(const std::string& path) {
    const ConfigFile cf = ConfigFile::parse_file(path);
    RunConfig rc;
    rc.dim = cf.get_int("", "dim", 2);
    if (rc.dim != 2 && rc.dim != 3) throw ParseError("config: dim must be 2 or 3");
    rc.seed = static_cast<std::uint64_t>(cf.get_double("", "seed", 0));

    const std::vector<std::string> atoms = cf.get_all("measure", "atom");
    if (!atoms.empty()) {
        DiscreteMeasure mu;
        for (const std::string& row : atoms) {
            const std::vector<double> nums = parse_numbers(row);
            if (static_cast<int>(nums.size()) != rc.dim + 1)
                throw ParseError("config: atom needs direction + weight: " + row);
            mu.directions.push_back(parse_direction(rc.dim, nums, "atom"));
            if (!(nums.back() > 0)) throw ParseError("config: atom weights must be positive");
            mu.weights.push_back(nums.back());
        }
        rc.measure = std::move(mu);
    }

    if (const auto file = cf.get("polytope", "file")) {
        rc.polytope = read_polytope_file(*file);
        if (rc.polytope->dim() != rc.dim)
            throw ParseError("config: polytope file dimension mismatch");
    } else {
        const std::vector<std::string> facets = cf.get_all("polytope", "facet");
        if (!facets.empty()) {
            std::vector<Direction> normals;
            std::vector<double> supports;
            for (const std::string& row : facets) {
                const std::vector<double> nums = parse_numbers(row);
                if (static_cast<int>(nums.size()) != rc.dim + 1)
                    throw ParseError("config: facet needs normal + support: " + row);
                normals.push_back(parse_direction(rc.dim, nums, "facet"));
                supports.push_back(nums.back());
            }
            try {
                rc.polytope = HPolytope(std::move(normals), std::move(supports));
            } catch (const InvalidPolytope& e) {
                throw ParseError(std::string("config: ") + e.what());
            }
        }
    }

    if (cf.get("density", "kind")) rc.density = parse_density(cf, rc.dim);

    rc.solver.tol_kkt = cf.get_double("solver", "tol_kkt", rc.solver.tol_kkt);
    rc.solver.max_iters = cf.get_int("solver", "max_iters", rc.solver.max_iters);
    rc.solver.step_init = cf.get_double("solver", "step_init", rc.solver.step_init);
    rc.solver.backtrack_ratio =
        cf.get_double("solver", "backtrack_ratio", rc.solver.backtrack_ratio);
    rc.solver.constraint_tol =
        cf.get_double("solver", "constraint_tol", rc.solver.constraint_tol);
    rc.solver.multistart_count = cf.get_int("solver", "multistart", rc.solver.multistart_count);
    rc.solver.quad.resolution_2d =
        cf.get_int("quadrature", "resolution_2d", rc.solver.quad.resolution_2d);
    rc.solver.quad.resolution_3d =
        cf.get_int("quadrature", "resolution_3d", rc.solver.quad.resolution_3d);
    rc.solver.quad.gauss_order = cf.get_int("quadrature", "gauss_order", rc.solver.quad.gauss_order);
    if (!(rc.solver.backtrack_ratio > 0 && rc.solver.backtrack_ratio < 1))
        throw ParseError("config: backtrack_ratio must lie in (0,1)");
    if (!(rc.solver.tol_kkt > 0) || !(rc.solver.step_init > 0) ||
        !(rc.solver.constraint_tol > 0) || rc.solver.max_iters < 0)
        throw ParseError("config: solver parameters must be positive");

    if (const auto checks = cf.get("verify", "checks")) {
        std::istringstream is(*checks);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            tok = trim(tok);
            if (!tok.empty() && tok != "none") rc.verify.checks.push_back(tok);
        }
    } else {
        rc.verify.checks = {"variational", "integral-forms", "homogeneity", "convergence"};
    }
    if (const auto v = cf.get("verify", "t_values")) rc.verify.t_values = parse_numbers(*v);
    if (const auto v = cf.get("verify", "lambdas")) rc.verify.lambdas = parse_numbers(*v);
    if (const auto v = cf.get("verify", "eps_values")) rc.verify.eps_values = parse_numbers(*v);

    return rc;
}

}  // namespace wulff

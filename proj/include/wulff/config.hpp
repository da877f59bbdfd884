#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wulff/density.hpp"
#include "wulff/geometry.hpp"
#include "wulff/measures.hpp"
#include "wulff/solver.hpp"

namespace wulff {

// Key-value instance file with [section] blocks; repeated keys accumulate in
// order. `#` starts a comment.
class ConfigFile {
public:
    static ConfigFile parse(std::istream& is);
    static ConfigFile parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;

    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;

private:
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections_;
};

struct VerifyOptions {
    std::vector<std::string> checks;  // subset of variational, integral-forms, homogeneity,
                                      // convergence, uniqueness
    std::vector<double> t_values{1e-2, 1e-3, 1e-4};
    std::vector<double> lambdas{0.5, 2.0, 10.0};
    std::vector<double> eps_values{1e-3, 1e-4, 1e-5, 1e-7};
};

struct RunConfig {
    int dim = 2;
    std::uint64_t seed = 0;
    std::optional<DiscreteMeasure> measure;
    std::optional<HPolytope> polytope;
    std::optional<Density> density;
    SolverConfig solver;
    VerifyOptions verify;
};

// Parses and validates an instance file; referenced paths must exist.
RunConfig parse_run_config(const std::string& path);

}  // namespace wulff

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "wulff/config.hpp"
#include "wulff/errors.hpp"
#include "wulff/io.hpp"
#include "wulff/measures.hpp"
#include "wulff/quadrature.hpp"
#include "wulff/solver.hpp"
#include "wulff/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitNumericError = 3;
constexpr int kExitConcentrated = 4;
constexpr int kExitNotConverged = 5;

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    int multistart = 0;  // 0 = config value
    bool allow_soft = false;
    bool seed_set = false;
    std::uint64_t seed = 0;
};

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw wulff::Error("cannot open output file: " + p.string());
    return os;
}

wulff::CurvatureResult curvature_of(const wulff::HPolytope& P, const wulff::Density& d,
                                    const wulff::QuadratureSpec& quad) {
    if (P.dim() == 2)
        return wulff::curvature_measure(P, d, wulff::arc_partition(P, quad.gauss_order));
    return wulff::curvature_measure(P, d, wulff::make_rule(3, quad.resolution_3d));
}

double quermass_of(const wulff::HPolytope& P, const wulff::Density& d,
                   const wulff::QuadratureSpec& quad) {
    if (P.dim() == 2) return wulff::quermass(P, d, wulff::arc_partition(P, quad.gauss_order));
    return wulff::quermass(P, d, wulff::make_rule(3, quad.resolution_3d));
}

int cmd_compute(const wulff::RunConfig& rc, const CliOptions& opt) {
    if (!rc.polytope || !rc.density)
        throw wulff::ParseError("compute: config needs [polytope] and [density] blocks");
    const wulff::HPolytope& P = *rc.polytope;
    const double V = quermass_of(P, *rc.density, rc.solver.quad);
    const wulff::CurvatureResult curv = curvature_of(P, *rc.density, rc.solver.quad);

    const std::filesystem::path out(opt.out_dir);
    {
        std::ofstream os = open_out(out / "quermass.txt");
        os << "quermass = " << wulff::format_double(V) << "\n";
        os << "curvature_total = " << wulff::format_double(curv.total) << "\n";
    }
    {
        std::ofstream os = open_out(out / "curvature.csv");
        wulff::write_curvature_csv(os, P, curv);
    }
    {
        std::ofstream os = open_out(out / "surface.csv");
        wulff::write_measure_csv(os, wulff::surface_area_measure(P));
    }
    std::cout << "quermass " << wulff::format_double(V) << ", curvature total "
              << wulff::format_double(curv.total) << "\n";
    return 0;
}

int cmd_solve(const wulff::RunConfig& rc_in, const CliOptions& opt) {
    wulff::RunConfig rc = rc_in;
    if (!rc.measure || !rc.density)
        throw wulff::ParseError("solve: config needs [measure] and [density] blocks");
    if (opt.multistart > 0) rc.solver.multistart_count = opt.multistart;

    const int dim = rc.measure->directions[0].dim();
    const wulff::SphericalRule grid = wulff::make_rule(
        dim, dim == 2 ? rc.solver.quad.resolution_2d : rc.solver.quad.resolution_3d);
    const wulff::ConcentrationCheck cc = wulff::check_not_concentrated(*rc.measure, grid);
    if (!cc.ok) {
        std::cerr << "error: measure is concentrated in a closed hemisphere (worst "
                  << wulff::format_double(cc.worst) << ")\n";
        return kExitConcentrated;
    }

    const wulff::SolverResult res = wulff::solve(*rc.measure, *rc.density, rc.solver);
    for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";

    const std::filesystem::path out(opt.out_dir);
    wulff::write_polytope_file((out / "solution.poly").string(), res.polytope);
    {
        std::ofstream os = open_out(out / "result.txt");
        os << "converged = " << (res.converged ? 1 : 0) << "\n";
        os << "iterations = " << res.iterations << "\n";
        os << "tau = " << wulff::format_double(res.tau) << "\n";
        os << "objective = " << wulff::format_double(res.objective) << "\n";
        os << "kkt_residual = " << wulff::format_double(res.kkt_residual) << "\n";
    }
    {
        std::ofstream os = open_out(out / "trace.csv");
        os << "iter,objective,constraint,residual\n";
        for (size_t k = 0; k < res.trace.size(); ++k)
            os << k << "," << wulff::format_double(res.trace[k].objective) << ","
               << wulff::format_double(res.trace[k].constraint_value) << ","
               << wulff::format_double(res.trace[k].residual) << "\n";
    }

    if (rc.solver.multistart_count > 1 && opt.multistart > 0) {
        const wulff::MultistartReport probe =
            wulff::multistart_uniqueness_probe(*rc.measure, *rc.density, rc.solver, rc.seed);
        std::ofstream os = open_out(out / "uniqueness.txt");
        os << "starts = " << probe.runs.size() << "\n";
        os << "max_pairwise_hausdorff = "
           << wulff::format_double(probe.max_pairwise_hausdorff) << "\n";
        os << "max_pairwise_support_gap = "
           << wulff::format_double(probe.max_pairwise_support_gap) << "\n";
        os << "informational_only = " << (probe.informational_only ? 1 : 0) << "\n";
    }

    std::cout << (res.converged ? "converged" : "NOT converged") << " in " << res.iterations
              << " iterations, kkt residual " << wulff::format_double(res.kkt_residual)
              << ", tau " << wulff::format_double(res.tau) << "\n";
    if (!res.converged && !opt.allow_soft) return kExitNotConverged;
    return 0;
}

int cmd_verify(const wulff::RunConfig& rc, const CliOptions& opt) {
    std::vector<wulff::CheckReport> reports;
    if (rc.verify.checks.empty()) {
        std::cerr << "warning: empty check selection, nothing verified\n";
    }
    for (const std::string& name : rc.verify.checks) {
        if (name == "uniqueness") {
            if (!rc.measure || !rc.density)
                throw wulff::ParseError("verify: uniqueness needs [measure] and [density]");
            reports.push_back(
                wulff::uniqueness_check(*rc.measure, *rc.density, rc.solver, rc.seed));
            continue;
        }
        if (!rc.polytope || !rc.density)
            throw wulff::ParseError("verify: config needs [polytope] and [density] blocks");
        const wulff::HPolytope& P = *rc.polytope;
        if (name == "variational") {
            std::vector<double> g(static_cast<size_t>(P.facet_count()));
            for (size_t i = 0; i < g.size(); ++i)
                g[i] = std::sin(1.7 * static_cast<double>(i) + 0.3);
            reports.push_back(wulff::variational_check(P, *rc.density, g, rc.verify.t_values,
                                                       rc.solver.quad));
        } else if (name == "integral-forms") {
            reports.push_back(wulff::integral_forms_check(P, *rc.density,
                                                        wulff::default_g_suite(P),
                                                        rc.solver.quad));
        } else if (name == "homogeneity") {
            reports.push_back(
                wulff::homogeneity_check(P, *rc.density, rc.verify.lambdas, rc.solver.quad));
        } else if (name == "convergence") {
            reports.push_back(
                wulff::convergence_check(P, *rc.density, rc.verify.eps_values, rc.solver.quad));
        } else {
            throw wulff::ParseError("verify: unknown check: " + name);
        }
    }

    const std::filesystem::path out(opt.out_dir);
    std::ofstream text = open_out(out / "checks.txt");
    std::ofstream records = open_out(out / "checks.records");
    bool all_passed = true;
    for (const wulff::CheckReport& rep : reports) {
        text << wulff::report_text(rep) << "\n";
        records << wulff::report_record(rep) << "\n";
        std::cout << wulff::report_text(rep) << "\n";
        all_passed = all_passed && rep.passed;
    }
    if (!all_passed) {
        std::cerr << "failing checks:";
        for (const wulff::CheckReport& rep : reports)
            if (!rep.passed) std::cerr << " " << rep.name;
        std::cerr << "\n";
    }
    return all_passed ? 0 : kExitVerifyFailed;
}

int cmd_export(const wulff::RunConfig& rc, const CliOptions& opt) {
    if (!rc.polytope) throw wulff::ParseError("export: config needs a [polytope] block");
    const std::filesystem::path out(opt.out_dir);
    wulff::write_off_file((out / "body.off").string(), *rc.polytope);
    wulff::write_polytope_file((out / "body.poly").string(), *rc.polytope);
    std::cout << "wrote " << (out / "body.off").string() << " and "
              << (out / "body.poly").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wulff: weighted complement-volume functionals of convex bodies, their "
                 "curvature measures, and the discrete inverse problem"};
    app.require_subcommand(1);

    CliOptions opt;
    for (const char* name : {"compute", "solve", "verify", "export"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "instance file")->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", opt.seed, "random seed override")
            ->each([&](const std::string&) { opt.seed_set = true; });
        if (std::string(name) == "solve") {
            sub->add_option("--multistart", opt.multistart, "number of solver starts");
            sub->add_flag("--allow-soft", opt.allow_soft,
                          "exit 0 even when the solver did not converge");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitParseError : 0;
    }

    try {
        wulff::RunConfig rc = wulff::parse_run_config(opt.config_path);
        if (opt.seed_set) rc.seed = opt.seed;
        std::filesystem::create_directories(opt.out_dir);

        if (app.got_subcommand("compute")) return cmd_compute(rc, opt);
        if (app.got_subcommand("solve")) return cmd_solve(rc, opt);
        if (app.got_subcommand("verify")) return cmd_verify(rc, opt);
        if (app.got_subcommand("export")) return cmd_export(rc, opt);
        return kExitParseError;
    } catch (const wulff::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const wulff::MeasureConcentrated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConcentrated;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
}

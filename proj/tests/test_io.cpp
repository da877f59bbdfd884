#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wulff/config.hpp"
#include "wulff/errors.hpp"
#include "wulff/io.hpp"
#include "wulff/measures.hpp"

using namespace wulff;

TEST_SUITE_BEGIN("io");

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/wulff_test_" + name;
    std::ofstream os(path);
    os << content;
    return path;
}

}  // namespace

TEST_CASE("polytope text round trip is exact") {
    std::mt19937_64 rng(2);
    const HPolytope P = testsup::random_polygon(rng, 7);
    std::stringstream ss;
    write_polytope(ss, P);
    const HPolytope Q = read_polytope(ss);
    REQUIRE(Q.facet_count() == P.facet_count());
    for (int i = 0; i < P.facet_count(); ++i) {
        CHECK(Q.support(i) == P.support(i));  // %.17g round-trips doubles
        for (int k = 0; k < 2; ++k) CHECK(Q.normal(i)[k] == P.normal(i)[k]);
    }

    const HPolytope box = testsup::cube(2.0);
    std::stringstream s3;
    write_polytope(s3, box);
    CHECK(read_polytope(s3).vertices().size() == 8);
}

TEST_CASE("polytope parser rejects malformed input") {
    std::stringstream empty("");
    CHECK_THROWS_AS(read_polytope(empty), ParseError);
    std::stringstream bad("dim 5\nnormals 1\n1 0 0 0 0\nsupports 1\n1\n");
    CHECK_THROWS_AS(read_polytope(bad), ParseError);
    std::stringstream bad2("dim 2\nnormals 3\n1 0\n0 1\n1 1\nsupports 3\n1\n1\n1\n");
    CHECK_THROWS_AS(read_polytope(bad2), ParseError);  // hemisphere-concentrated
}

TEST_CASE("off export") {
    std::stringstream ss;
    write_off(ss, testsup::unit_square());
    std::string word;
    ss >> word;
    CHECK(word == "OFF");
    int nv = 0, nf = 0, ne = 0;
    ss >> nv >> nf >> ne;
    CHECK(nv == 4);
    CHECK(nf == 1);

    std::stringstream s3;
    write_off(s3, testsup::cube(1.0));
    s3 >> word >> nv >> nf >> ne;
    CHECK(nv == 8);
    CHECK(nf == 6);
    CHECK(ne == 12);
}

TEST_CASE("csv export carries one row per facet") {
    const HPolytope sq = testsup::unit_square();
    const Density d = Density::power_law(2, -1.0);
    const CurvatureResult curv = curvature_measure(sq, d, arc_partition(sq));
    std::stringstream ss;
    write_curvature_csv(ss, sq, curv);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "facet_index,nx,ny,support,mass");
    int rows = 0;
    while (std::getline(ss, line)) ++rows;
    CHECK(rows == 4);

    std::stringstream ms;
    write_measure_csv(ms, surface_area_measure(sq));
    std::getline(ms, line);
    CHECK(line == "facet_index,nx,ny,support,mass");
    rows = 0;
    while (std::getline(ms, line)) {
        CHECK(line.find(",2\n") == std::string::npos);  // masses are formatted values
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("config parsing with sections, repeats, and defaults") {
    const std::string path = write_temp("full.cfg", R"(
# instance
dim = 2
seed = 7

[measure]
atom = 1 0 1.5
atom = -1 0 1.5
atom = 0 1 1.5
atom = 0 -1 1.5

[polytope]
facet = 1 0 1
facet = -1 0 1
facet = 0 1 1
facet = 0 -1 1

[density]
kind = power
q = -1.5
phi2 = 2.0

[quadrature]
resolution_2d = 512
gauss_order = 24

[solver]
tol_kkt = 1e-9
max_iters = 123
)");
    const RunConfig rc = parse_run_config(path);
    CHECK(rc.dim == 2);
    CHECK(rc.seed == 7);
    REQUIRE(rc.measure.has_value());
    CHECK(rc.measure->weights.size() == 4);
    CHECK(rc.measure->total() == doctest::Approx(6.0));
    REQUIRE(rc.polytope.has_value());
    CHECK(rc.polytope->facet_count() == 4);
    REQUIRE(rc.density.has_value());
    CHECK(rc.density->q() == doctest::Approx(-1.5));
    CHECK(rc.density->phi2(Direction(1, 0)) == doctest::Approx(2.0));
    CHECK(rc.solver.quad.resolution_2d == 512);
    CHECK(rc.solver.quad.gauss_order == 24);
    CHECK(rc.solver.tol_kkt == doctest::Approx(1e-9));
    CHECK(rc.solver.max_iters == 123);
    CHECK(rc.solver.quad.resolution_3d == 64);  // untouched default
    // default verify suite
    CHECK(rc.verify.checks.size() == 4);
    std::remove(path.c_str());
}

TEST_CASE("config densities: tabulated phi2 and radial-exp") {
    const std::string path = write_temp("tab.cfg", R"(
dim = 2
[density]
kind = power
q = -1
phi2_point = 1 0 2.0
phi2_point = -1 0 1.0
phi2_point = 0 1 1.5
phi2_point = 0 -1 1.5
)");
    const RunConfig rc = parse_run_config(path);
    REQUIRE(rc.density.has_value());
    CHECK(rc.density->phi2(Direction(1, 0)) == doctest::Approx(2.0));
    CHECK(rc.density->phi2(Direction(-1, 0)) == doctest::Approx(1.0));
    // interpolation stays within the table's range
    const double mid = rc.density->phi2(Direction(1, 1));
    CHECK(mid > 1.0);
    CHECK(mid < 2.0);
    std::remove(path.c_str());

    const std::string rad = write_temp("rad.cfg", R"(
dim = 2
[density]
kind = radial-exp
rate = 1.0
scale = 1.0
r1 = 1.0
c1 = 1.35
alpha1 = -2
c2 = 0.05
alpha2 = -2
)");
    const RunConfig rc2 = parse_run_config(rad);
    REQUIRE(rc2.density.has_value());
    CHECK(rc2.density->kind() == Density::Kind::Radial);
    CHECK(tail_integral(*rc2.density, 1.0, Direction(1, 0)) ==
          doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-9));
    std::remove(rad.c_str());
}

TEST_CASE("config can reference a polytope file") {
    const std::string poly = "/tmp/wulff_test_body.poly";
    write_polytope_file(poly, testsup::unit_square());
    const std::string path =
        write_temp("ref.cfg", "dim = 2\n[polytope]\nfile = " + poly + "\n");
    const RunConfig rc = parse_run_config(path);
    REQUIRE(rc.polytope.has_value());
    CHECK(rc.polytope->facet_count() == 4);
    CHECK(rc.polytope->support(2) == doctest::Approx(1.0));
    std::remove(path.c_str());
    std::remove(poly.c_str());
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_run_config("/tmp/wulff_missing_file.cfg"), ParseError);
    const std::string bad1 = write_temp("bad1.cfg", "dim = 4\n");
    CHECK_THROWS_AS(parse_run_config(bad1), ParseError);
    const std::string bad2 = write_temp("bad2.cfg", "[density]\nkind = power\nq = 1\n");
    CHECK_THROWS_AS(parse_run_config(bad2), ParseError);
    const std::string bad3 = write_temp("bad3.cfg", "[polytope]\nfile = /tmp/nope.poly\n");
    CHECK_THROWS_AS(parse_run_config(bad3), ParseError);
    const std::string bad4 = write_temp("bad4.cfg", "key_without_value\n");
    CHECK_THROWS_AS(parse_run_config(bad4), ParseError);
    for (const std::string& p : {bad1, bad2, bad3, bad4}) std::remove(p.c_str());
}

TEST_CASE("verify options parsing") {
    const std::string path = write_temp("ver.cfg", R"(
dim = 2
[verify]
checks = homogeneity, uniqueness
lambdas = 0.5 2
t_values = 1e-2 1e-4
)");
    const RunConfig rc = parse_run_config(path);
    REQUIRE(rc.verify.checks.size() == 2);
    CHECK(rc.verify.checks[0] == "homogeneity");
    CHECK(rc.verify.checks[1] == "uniqueness");
    CHECK(rc.verify.lambdas == std::vector<double>{0.5, 2.0});
    CHECK(rc.verify.t_values == std::vector<double>{1e-2, 1e-4});
    std::remove(path.c_str());

    const std::string none = write_temp("none.cfg", "dim = 2\n[verify]\nchecks = none\n");
    CHECK(parse_run_config(none).verify.checks.empty());
    std::remove(none.c_str());
}

TEST_SUITE_END();

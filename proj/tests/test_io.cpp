#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qreflex/classify2d.hpp"
#include "qreflex/cli.hpp"
#include "qreflex/dedup.hpp"
#include "qreflex/io.hpp"
#include "support/fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <algorithm>
#include <sstream>

using namespace qreflex;
using namespace fixtures;

static std::string data_path(const std::string& name) { return std::string(QREFLEX_TEST_DATA) + "/" + name; }

TEST_CASE("parse_polytope: spec examples") {
    CHECK(parse_polytope("2 4 M\n1 1\n1 -1\n-1 1\n-1 -1\n") == square());
    CHECK(parse_polytope("2 3 M\n2 -1\n-1 2\n-1 -1\n") == p2_dual_triangle());
    ParsedVertexFile info;
    Polytope P = parse_polytope("2 4 M\n3/2 0\n0 3/2\n-3/2 -3/2\n0 0\n", &info);
    CHECK(P == scale(p2_triangle(), Rational(3, 2)));
    REQUIRE(info.dropped.size() == 1);  // (0,0) is not extreme
    CHECK(info.dropped[0] == qv({0, 0}));
}

TEST_CASE("parse_polytope: whitespace-insensitive, errors carry line numbers") {
    CHECK(parse_polytope("2   4   M\n\n 1 1\n1  -1\n  -1 1\n-1 -1\n") == square());
    CHECK_THROWS_AS(parse_polytope("2 4\n1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_polytope("2 0 M\n"), ParseError);
    CHECK_THROWS_AS(parse_polytope("2 2 M\n1 1 1\n-1 -1\n"), ParseError);
    CHECK_THROWS_AS(parse_polytope("2 2 M\n1 x\n-1 -1\n"), ParseError);
    try {
        parse_polytope("2 2 M\n1 1\n1 1/0\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("print/parse roundtrip is the identity on canonical forms") {
    std::mt19937_64 rng(11);
    std::vector<Polytope> corpus = {square(), diamond(), p2_triangle(), scale(p2_triangle(), Rational(3, 2)),
                                    cube3()};
    for (const auto& P : corpus) {
        Polytope Q = parse_polytope(print_polytope(P));
        CHECK(Q == P);
        CHECK(print_polytope(Q) == print_polytope(P));
    }
}

TEST_CASE("cone files") {
    GradedCone C = parse_cone("3 4 C\n1 1 1\n1 -1 1\n-1 1 1\n-1 -1 1\n");
    CHECK(C.cone == cone_over_polytope(square()).cone);
    GradedCone D = parse_cone(print_cone(C));
    CHECK(D.cone == C.cone);
    CHECK_THROWS_AS(parse_cone("2 1 M\n1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_polytope("3 4 C\n1 1 1\n1 -1 1\n-1 1 1\n-1 -1 1\n"), ParseError);
}

TEST_CASE("dedup_gl: unimodular images collapse, distinct classes stay apart") {
    // (x,y) -> (x, x+y) maps the square to a sheared square.
    Polytope sq = square();
    std::vector<VecQ> sheared;
    for (const auto& v : sq.vertices()) sheared.push_back({v[0], v[0] + v[1]});
    Polytope shear = Polytope::hull(sheared, 2, LatticeTag::M);
    CHECK(dedup_gl({square(), shear}).size() == 1);
    CHECK(dedup_gl({square(), diamond()}).size() == 2);
    CHECK(dedup_gl({p2_triangle(), p2_dual_triangle()}).size() == 2);
}

TEST_CASE("2D enumeration: 16 classes at bound 2 and 3") {
    auto b2 = enumerate_reflexive_polygons(2);
    CHECK(gl_class_count(b2) == 16);
    auto b3 = enumerate_reflexive_polygons(3);
    CHECK(gl_class_count(b3) == 16);
    for (const auto& P : b3) CHECK(is_reflexive(P));
}

TEST_CASE("cli: check square") {
    std::ostringstream out, err;
    int rc = cli::dispatch({"check", data_path("square.poly")}, out, err);
    CHECK(rc == 0);
    CHECK(out.str().find("is_reflexive: true") != std::string::npos);
    CHECK(out.str().find("is_q_reflexive: true") != std::string::npos);
}

TEST_CASE("cli: check --strict fails on a non-reflexive input") {
    std::ostringstream out, err;
    int rc = cli::dispatch({"check", "--strict", data_path("scaled_triangle.poly")}, out, err);
    CHECK(rc == 1);
    CHECK(out.str().find("is_lattice: false") != std::string::npos);
    CHECK(out.str().find("witness non_integral_vertex") != std::string::npos);
}

TEST_CASE("cli: dual prints a polytope file") {
    std::ostringstream out, err;
    int rc = cli::dispatch({"dual", data_path("square.poly")}, out, err);
    CHECK(rc == 0);
    CHECK(out.str().find("2 4 N") != std::string::npos);
}

TEST_CASE("cli: nef-dual writes self-mirror parts for the square partition") {
    auto dir = std::filesystem::temp_directory_path() / "qreflex_nefdual";
    std::filesystem::create_directories(dir);
    std::ostringstream out, err;
    int rc = cli::dispatch({"nef-dual", "--parts", data_path("seg_x.poly"), data_path("seg_y.poly"), "--out-dir",
                            dir.string()},
                           out, err);
    REQUIRE(rc == 0);
    std::ifstream n1(dir / "nabla_1.poly"), n2(dir / "nabla_2.poly");
    REQUIRE(n1.good());
    REQUIRE(n2.good());
    std::stringstream s1, s2;
    s1 << n1.rdbuf();
    s2 << n2.rdbuf();
    Polytope d1 = parse_polytope(s1.str());
    Polytope d2 = parse_polytope(s2.str());
    CHECK(d1.vertices() == seg_x().vertices());
    CHECK(d2.vertices() == seg_y().vertices());
    CHECK(out.str().find("identity roundtrip: pass") != std::string::npos);
}

TEST_CASE("cli: emit-ci is deterministic under a fixed seed") {
    std::ostringstream out1, out2, err;
    int rc1 = cli::dispatch({"emit-ci", "--parts", data_path("seg_x.poly"), data_path("seg_y.poly"), "--seed", "42"},
                            out1, err);
    int rc2 = cli::dispatch({"emit-ci", "--parts", data_path("seg_x.poly"), data_path("seg_y.poly"), "--seed", "42"},
                            out2, err);
    CHECK(rc1 == 0);
    CHECK(out1.str() == out2.str());  // byte-identical reports
    CHECK(out1.str().find("warning: r < d") != std::string::npos);
    CHECK(out1.str().find("seed: 42") != std::string::npos);
    // 3 + 3 terms with numeric coefficients attached.
    int eq1_terms = 0, eq2_terms = 0, with_coeff = 0;
    std::istringstream lines(out1.str());
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("1 ;", 0) == 0) ++eq1_terms;
        if (line.rfind("2 ;", 0) == 0) ++eq2_terms;
        if (std::count(line.begin(), line.end(), ';') == 3) ++with_coeff;
    }
    CHECK(eq1_terms == 3);
    CHECK(eq2_terms == 3);
    CHECK(with_coeff == 6);
}

TEST_CASE("cli: emit-gcy on the cone over the square has 5 terms") {
    std::ostringstream out, err;
    int rc = cli::dispatch({"emit-gcy", data_path("cone_square.poly")}, out, err);
    CHECK(rc == 0);
    // count term lines: they start with "1 ;"
    int terms = 0;
    std::istringstream ss(out.str());
    std::string line;
    while (std::getline(ss, line))
        if (line.rfind("1 ;", 0) == 0) ++terms;
    CHECK(terms == 5);
}

TEST_CASE("cli: cone-check reports gorenstein structure") {
    std::ostringstream out, err;
    int rc = cli::dispatch({"cone-check", data_path("cone_square.poly")}, out, err);
    CHECK(rc == 0);
    CHECK(out.str().find("is_gorenstein: true") != std::string::npos);
    CHECK(out.str().find("reflexive_gorenstein_index: 1") != std::string::npos);
    CHECK(out.str().find("almost_reflexive_index: 1") != std::string::npos);
}

TEST_CASE("cli: enumerate-2d with dedup") {
    std::ostringstream out, err;
    int rc = cli::dispatch({"enumerate-2d", "--bound", "2", "--dedup"}, out, err);
    CHECK(rc == 0);
    CHECK(out.str().find("unimodular classes: 16") != std::string::npos);
}

TEST_CASE("cli: dedup groups files") {
    std::ostringstream out, err;
    int rc = cli::dispatch({"dedup", data_path("square.poly"), data_path("square.poly"), data_path("p2dual.poly")},
                           out, err);
    CHECK(rc == 0);
    CHECK(out.str().find("classes: 2") != std::string::npos);
}

TEST_CASE("cli: errors and exit codes") {
    std::ostringstream out, err;
    CHECK(cli::dispatch({"frobnicate"}, out, err) == 2);
    CHECK(cli::dispatch({"check", "/nonexistent/file.poly"}, out, err) == 2);
    CHECK(cli::dispatch({"bullet-cone", data_path("square.poly")}, out, err) == 2);  // not a cone file
    CHECK(cli::dispatch({}, out, err) == 2);
}

TEST_CASE("cli: json reports are valid json and deterministic") {
    std::ostringstream out1, out2, err;
    CHECK(cli::dispatch({"check", "--json", data_path("square.poly")}, out1, err) == 0);
    CHECK(cli::dispatch({"check", "--json", data_path("square.poly")}, out2, err) == 0);
    CHECK(out1.str() == out2.str());
    auto j = nlohmann::json::parse(out1.str());
    CHECK(j["results"]["is_reflexive"] == true);
    CHECK(j["inputs"][0]["hash"].get<std::string>().size() == 16);
}

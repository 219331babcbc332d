#include <doctest.h>

#include <sstream>

#include "posetk/cli.hpp"
#include "posetk/errors.hpp"
#include "posetk/io.hpp"
#include "posetk/isomorphism.hpp"
#include "posetk/report.hpp"
#include "support.hpp"

using namespace posetk;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_cli(RunConfig c) {
  std::ostringstream out, err;
  const int status = run(c, out, err);
  return {status, out.str(), err.str()};
}

RunConfig config(Command command, const std::string& file) {
  RunConfig c;
  c.command = command;
  c.input_path = testing::data_path(file);
  return c;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("poset text round trip") {
  for (const char* f : {"vee.poset", "pin.poset", "circle.poset", "sphere.poset", "circle8.cover"}) {
    const Poset p = testing::load(f);
    const std::string text = format_poset(p);
    const Poset again = parse_poset(text);
    CHECK(again == p);
    CHECK(format_poset(again) == text);
  }
}

TEST_CASE("property: random posets round trip through text") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const Poset p = testing::random_poset(rng);
    CHECK(parse_poset(format_poset(p)) == p);
  }
}

TEST_CASE("covering text round trip") {
  const GroundSpace space = parse_covering(read_file(testing::data_path("circle8.cover")));
  const GroundSpace again = parse_covering(format_covering(space));
  CHECK(again.points == space.points);
  CHECK(again.cover == space.cover);
}

TEST_CASE("basis and order formats agree") {
  const Poset from_basis = testing::load("circle.poset");
  const Poset from_order = parse_poset("points: x1, x2, x3, x4\norder: x1 <= x3\norder: x1 <= x4\n"
                                      "order: x2 <= x3\norder: x2 <= x4 # comment\n");
  CHECK(from_basis == from_order);
  const Poset chain = parse_poset("points: a b c\norder: a <= b <= c\n");
  CHECK(chain.leq(0, 2));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_input("order: a <= b\n"), ParseError);
  CHECK_THROWS_AS(parse_input("points: a b\nbogus: a\n"), ParseError);
  CHECK_THROWS_AS(parse_input("points: a b\norder: a b\n"), ParseError);
  CHECK_THROWS_AS(parse_input("points: a b\nbasis: a, b\n"), ParseError);
  CHECK_THROWS_AS(parse_input("points: a b\nbasis: {a}\norder: a <= b\n"), ParseError);
  CHECK_THROWS_AS(parse_input("points: a\npoints: b\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2\n1 1\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2\n1 x\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_vector("(1, 2"), ParseError);
  // well formed but mathematically invalid
  CHECK_THROWS_AS(parse_input("points: a b\norder: a <= c\n"), DomainError);
  CHECK_THROWS_AS(parse_input("points: a b\nbasis: {a, b}\n"), DomainError);
}

TEST_CASE("matrix and vector text") {
  const IntMatrix m = testing::mat(2, {1, -10, 3, 4});
  CHECK(format_matrix(m) == "  1 -10\n  3   4\n");
  CHECK(parse_matrix(format_matrix_file(m)) == m);
  CHECK(parse_vector("(1, -7, 1)") == parse_vector("1,-7,1"));
  CHECK(format_vector(parse_vector("1 -7 1")) == "(1, -7, 1)");
}

TEST_CASE("dot output") {
  const Poset vee = testing::load("vee.poset");
  const std::string hasse_dot = emit_dot(vee, hasse(vee));
  CHECK(hasse_dot.rfind("digraph hasse {", 0) == 0);
  CHECK(count(hasse_dot, "->") == 2);
  CHECK(count(hasse_dot, "rank=same") == 2);

  const BratteliDiagram d = build_diagram(vee, 5);
  const std::string brat = emit_dot(d);
  CHECK(count(brat, "rank=same") == 5);
  CHECK(brat.find("n4_0 [label=\"6\", xlabel=\"x1\"]") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t n = 0; n < d.edge_count(); ++n) edges += static_cast<std::size_t>(d.edges(n).sum());
  CHECK(count(brat, "->") == edges);

  const std::string prim = emit_dot(prim_poset(build_diagram(testing::load("circle.poset"))));
  CHECK(prim.rfind("digraph prim {", 0) == 0);
  CHECK(count(prim, "->") == 4);
}

TEST_CASE("cli k0 on the sphere") {
  const Result r = run_cli(config(Command::k0, "sphere.poset"));
  CHECK(r.status == 0);
  CHECK(r.out.rfind("K0 = Z^6, det(T) = 1\n", 0) == 0);
}

TEST_CASE("cli cone on the vee") {
  const Result r = run_cli(config(Command::cone, "vee.poset"));
  CHECK(r.status == 0);
  CHECK(r.out.find("(x2, x3) != (0, 0)") != std::string::npos);
  CHECK(r.out.find("x1: x1 + m*(x2 + x3)") != std::string::npos);
}

TEST_CASE("cli member on penrose") {
  RunConfig c;
  c.command = Command::member;
  c.matrix_path = testing::data_path("penrose.matrix");
  c.vectors = {"0,0", "-3,5"};
  const Result r = run_cli(c);
  CHECK(r.status == 0);
  CHECK(r.out == "(0, 0): in-cone(0)\n(-3, 5): in-cone(4)\n");
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli(config(Command::k0, "missing.poset")).status == 2);

  RunConfig shallow = config(Command::spectrum, "sphere.poset");
  shallow.depth = 3;
  const Result r = run_cli(shallow);
  CHECK(r.status == 1);
  CHECK(r.err.find("not yet stable") != std::string::npos);

  RunConfig bad_matrix;
  bad_matrix.command = Command::k0;
  bad_matrix.matrix_path = testing::data_path("vee.poset");
  CHECK(run_cli(bad_matrix).status == 2);

  RunConfig bad_m = config(Command::member, "vee.poset");
  bad_m.m_max = 0;
  CHECK(run_cli(bad_m).status == 2);

  RunConfig dot_k0 = config(Command::k0, "vee.poset");
  dot_k0.format = OutputFormat::dot;
  CHECK(run_cli(dot_k0).status == 2);
}

TEST_CASE("cli json lines parse as json") {
  for (Command c : {Command::quotient, Command::poset_check, Command::bratteli, Command::spectrum, Command::k0,
                    Command::cone, Command::roundtrip}) {
    RunConfig cfg = config(c, "pin.poset");
    cfg.format = OutputFormat::json_lines;
    const Result r = run_cli(cfg);
    REQUIRE(r.status == 0);
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
      CHECK(line.front() == '{');
      CHECK(line.back() == '}');
    }
  }
}

TEST_CASE("cli quotient lists the classes") {
  const Result r = run_cli(config(Command::quotient, "circle8.cover"));
  CHECK(r.status == 0);
  CHECK(r.out.find("points: p0 p1 p4 p5\n") == 0);
  CHECK(r.out.find("# class p1: p1 p2 p3") != std::string::npos);
  CHECK(r.out.find("# class p5: p5 p6 p7") != std::string::npos);
  CHECK(parse_poset(r.out) == testing::load("circle8.cover"));
}

TEST_CASE("roundtrip command equals the composed stages") {
  for (const char* f : {"vee.poset", "pin.poset", "circle.poset", "sphere.poset", "circle8.cover"}) {
    const Result r = run_cli(config(Command::roundtrip, f));
    const Poset p = testing::load(f);
    const bool composed = is_isomorphic(prim_poset(build_diagram(p)).poset, p);
    CHECK(composed);
    CHECK(r.status == 0);
    CHECK(r.out.find("roundtrip: ok") != std::string::npos);
  }
}

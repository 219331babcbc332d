#include <doctest.h>

#include "posetk/bratteli.hpp"
#include "posetk/errors.hpp"
#include "support.hpp"

using namespace posetk;

TEST_CASE("vee dimensions") {
  const Poset p = testing::load("vee.poset");
  const BratteliDiagram d = build_diagram(p, 5);
  const std::vector<std::vector<Integer>> expected{{1}, {1, 1}, {1, 2, 1}, {1, 4, 1}, {1, 6, 1}};
  for (std::size_t n = 0; n < 5; ++n) {
    const auto dims = d.dimensions(n);
    std::vector<Integer> ordered;
    if (n < 2) {
      ordered = dims;
    } else {
      // node order x2, x1, x3
      ordered = {dims[1], dims[0], dims[2]};
    }
    CHECK(ordered == expected[n]);
  }
  CHECK(d.stable_level() == 2u);
}

TEST_CASE("stable matrices are the zeta matrices of the fixtures") {
  for (const auto& f : testing::fixtures()) {
    const Poset p = testing::load(f.file);
    const BratteliDiagram d = build_diagram(p);
    CHECK(stable_incidence(d).matrix() == testing::zeta_matrix(p));
    CHECK(testing::reorder(stable_incidence(d).matrix(), p.points(), f.reference_order) == f.t);
  }
}

TEST_CASE("level partitions of the vee") {
  const Poset p = testing::load("vee.poset");
  const auto closed = closed_sets(p);
  const LevelPartition l1 = level_partition(p, closed, 1);
  REQUIRE(l1.atoms.size() == 2);
  CHECK(p.labels_of(l1.atoms[0]) == std::vector<std::string>{"x1"});
  CHECK(p.labels_of(l1.atoms[1]) == std::vector<std::string>{"x2", "x3"});
  const LevelPartition l3 = level_partition(p, closed, 3);
  CHECK(l3.atoms.size() == 3);
  // K' for all four closed sets: P, {x2,x3}, {x2}, {x3}
  CHECK(l3.family.size() == 4);
}

TEST_CASE("shallow diagrams are not certified") {
  const Poset p = testing::load("sphere.poset");
  const BratteliDiagram d = build_diagram(p, 3);
  CHECK(!d.stable_level().has_value());
  CHECK_THROWS_AS(stable_incidence(d), DomainError);
}

TEST_CASE("closed set order must start with the whole space") {
  const Poset p = testing::load("vee.poset");
  auto closed = closed_sets(p);
  std::swap(closed[0], closed[1]);
  CHECK_THROWS_AS(build_diagram(p, closed), DomainError);
  closed.pop_back();
  CHECK_THROWS_AS(build_diagram(p, closed), DomainError);
}

TEST_CASE("incidence matrix validation") {
  CHECK_THROWS_AS(IncidenceMatrix(testing::mat(2, {1, 0, 0, 0})), DomainError);
  CHECK_THROWS_AS(IncidenceMatrix(testing::mat(2, {1, -1, 0, 1})), DomainError);
  CHECK_NOTHROW(IncidenceMatrix(testing::mat(2, {1, 1, 1, 0})));
}

TEST_CASE("stationary penrose diagram") {
  const BratteliDiagram d = stationary_diagram(IncidenceMatrix(testing::mat(2, {1, 1, 1, 0})), 6);
  CHECK(d.dimensions(1) == std::vector<Integer>{1, 1});
  CHECK(d.dimensions(2) == std::vector<Integer>{2, 1});
  CHECK(d.dimensions(5) == std::vector<Integer>{8, 5});
}

TEST_CASE("property: construction invariants") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const Poset p = testing::random_poset(rng);
    const BratteliDiagram d = build_diagram(p);
    REQUIRE(d.stable_level().has_value());
    const std::size_t n0 = *d.stable_level();
    CHECK(stable_incidence(d).matrix() == testing::zeta_matrix(p));
    for (const LevelPartition& part : d.partitions()) {
      PointMask seen = 0;
      for (std::size_t j = 0; j < part.atoms.size(); ++j) {
        CHECK((seen & part.atoms[j]) == 0);
        seen |= part.atoms[j];
        const PointMask f = part.envelopes[j];
        CHECK(is_subset(part.atoms[j], f));
        CHECK(std::find(part.family.begin(), part.family.end(), f) != part.family.end());
        for (PointMask g : part.family) {
          if (is_subset(part.atoms[j], g)) CHECK(is_subset(f, g));
        }
      }
      CHECK(seen == p.all());
      // lattice closure is closed under union and intersection
      for (PointMask a : part.family) {
        for (PointMask b : part.family) {
          CHECK(std::find(part.family.begin(), part.family.end(), a | b) != part.family.end());
          if (a & b) CHECK(std::find(part.family.begin(), part.family.end(), a & b) != part.family.end());
        }
      }
    }
    for (std::size_t n = 0; n + 1 < d.depth(); ++n) {
      const IntMatrix& e = d.edges(n);
      CHECK((e.array() <= 1).all());
      std::vector<Integer> next(static_cast<std::size_t>(e.rows()), 0);
      const auto dims = d.dimensions(n);
      for (Eigen::Index k = 0; k < e.rows(); ++k) {
        for (Eigen::Index j = 0; j < e.cols(); ++j) next[static_cast<std::size_t>(k)] += e(k, j) * dims[static_cast<std::size_t>(j)];
      }
      CHECK(next == d.dimensions(n + 1));
    }
    // envelopes are the closures of single points from n0 + 1 on
    for (std::size_t n = n0 + 1; n < d.depth(); ++n) {
      const LevelPartition& part = d.partitions()[n];
      for (std::size_t j = 0; j < part.atoms.size(); ++j) {
        CHECK(part.envelopes[j] == p.up_set(p.least_member(part.atoms[j])));
      }
    }
  }
}

TEST_CASE("property: stable matrix does not depend on the closed set order") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Poset p = testing::random_poset(rng);
    auto closed = closed_sets(p);
    std::shuffle(closed.begin() + 1, closed.end(), rng);
    const BratteliDiagram d = build_diagram(p, closed);
    REQUIRE(d.stable_level().has_value());
    CHECK(stable_incidence(d).matrix() == testing::zeta_matrix(p));
  }
}

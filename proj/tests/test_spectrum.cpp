#include <doctest.h>

#include <set>

#include "posetk/errors.hpp"
#include "posetk/isomorphism.hpp"
#include "posetk/spectrum.hpp"
#include "support.hpp"

using namespace posetk;

namespace {

// Oracle: all stable node subsets satisfying (i) and (ii).
std::set<NodeMask> brute_ideals(const IntMatrix& t) {
  const auto k = static_cast<std::size_t>(t.rows());
  std::set<NodeMask> out;
  for (NodeMask s = 0; s < (NodeMask{1} << k); ++s) {
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      bool all_successors_in = true;
      for (std::size_t i = 0; i < k; ++i) {
        if (t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == 0) continue;
        if (!((s >> i) & 1u)) all_successors_in = false;
        if (((s >> j) & 1u) && !((s >> i) & 1u)) ok = false;
      }
      if (all_successors_in && !((s >> j) & 1u)) ok = false;
    }
    if (ok) out.insert(s);
  }
  return out;
}

// Oracle for (iii): some power m <= 100 has a row outside S positive on
// every column outside S.
bool brute_primitive(const IntMatrix& t, NodeMask s) {
  const auto k = t.rows();
  const NodeMask all = (NodeMask{1} << k) - 1;
  if (s == all) return false;
  IntMatrix reach = (t.array() > 0).cast<Integer>();
  const IntMatrix step = reach;
  for (int m = 1; m <= 100; ++m) {
    for (Eigen::Index target = 0; target < k; ++target) {
      if ((s >> target) & 1u) continue;
      bool every = true;
      for (Eigen::Index src = 0; src < k; ++src) {
        if (!((s >> src) & 1u) && reach(target, src) == 0) every = false;
      }
      if (every) return true;
    }
    reach = ((reach * step).array() > 0).cast<Integer>();
  }
  return false;
}

}  // namespace

TEST_CASE("vee ideal census") {
  const BratteliDiagram d = build_diagram(testing::load("vee.poset"));
  const auto ideals = nontrivial_ideals(d);
  REQUIRE(ideals.size() == 3);
  CHECK(is_primitive(ideals[0], d));
  CHECK(is_primitive(ideals[1], d));
  CHECK(!is_primitive(ideals[2], d));
  CHECK(zero_ideal_primitive(d));
  const PrimSpectrum s = prim_poset(d);
  CHECK(s.poset.points() == std::vector<std::string>{"I1", "I2", "0"});
  CHECK(is_isomorphic(s.poset, testing::load("vee.poset")));
}

TEST_CASE("zero ideal is not primitive without a least point") {
  for (const char* f : {"pin.poset", "circle.poset", "sphere.poset"}) {
    const BratteliDiagram d = build_diagram(testing::load(f));
    CHECK(!zero_ideal_primitive(d));
  }
}

TEST_CASE("whole algebra is never primitive") {
  const BratteliDiagram d = build_diagram(testing::load("pin.poset"));
  const auto all = ideal_subdiagrams(d);
  CHECK(all.front().selected == 0xFu);
  CHECK(!is_primitive(all.front(), d));
  CHECK(all.back().is_zero());
}

TEST_CASE("pin ideals against exhaustive search") {
  const BratteliDiagram d = build_diagram(testing::load("pin.poset"));
  std::set<NodeMask> found;
  for (const auto& ideal : ideal_subdiagrams(d)) found.insert(ideal.selected);
  CHECK(found == brute_ideals(stable_incidence(d).matrix()));
}

TEST_CASE("backward completion of pre-stable levels") {
  const BratteliDiagram d = build_diagram(testing::load("sphere.poset"));
  for (const auto& ideal : ideal_subdiagrams(d)) {
    for (std::size_t n = 0; n + 1 < d.depth(); ++n) {
      const IntMatrix& e = d.edges(n);
      for (Eigen::Index j = 0; j < e.cols(); ++j) {
        bool all_in = true;
        for (Eigen::Index i = 0; i < e.rows(); ++i) {
          if (e(i, j) == 0) continue;
          const bool target_in = (ideal.by_level[n + 1] >> i) & 1u;
          all_in = all_in && target_in;
          if ((ideal.by_level[n] >> j) & 1u) CHECK(target_in);
        }
        CHECK(all_in == static_cast<bool>((ideal.by_level[n] >> j) & 1u));
      }
    }
  }
}

TEST_CASE("shallow diagram has no spectrum") {
  CHECK_THROWS_AS(prim_poset(build_diagram(testing::load("sphere.poset"), 4)), DomainError);
}

TEST_CASE("property: ideals and primitivity against oracles") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const Poset p = testing::random_poset(rng);
    const BratteliDiagram d = build_diagram(p);
    const IntMatrix t = stable_incidence(d).matrix();
    const auto ideals = ideal_subdiagrams(d);
    std::set<NodeMask> found;
    for (const auto& ideal : ideals) found.insert(ideal.selected);
    REQUIRE(found.size() == ideals.size());
    CHECK(found == brute_ideals(t));

    // primitive ideals are the complements of the principal up-sets
    std::set<NodeMask> expected;
    for (std::size_t y = 0; y < p.size(); ++y) expected.insert(testing::node_mask(p, p.all() & ~p.up_set(y)));
    std::set<NodeMask> primitive;
    for (const auto& ideal : ideals) {
      const bool flag = is_primitive(ideal, d);
      CHECK(flag == brute_primitive(t, ideal.selected));
      if (flag) primitive.insert(ideal.selected);
    }
    CHECK(primitive == expected);
    CHECK(zero_ideal_primitive(d) == is_primitive(ideals.back(), d));
  }
}

TEST_CASE("property: round trip") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const Poset p = testing::random_poset(rng);
    CHECK(roundtrip_check(p));
  }
}

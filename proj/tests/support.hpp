#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "posetk/io.hpp"
#include "posetk/linalg.hpp"
#include "posetk/topology.hpp"

#ifndef POSETK_DATA_DIR
#define POSETK_DATA_DIR "data"
#endif

namespace testing {

using posetk::Integer;
using posetk::IntMatrix;
using posetk::IntVector;
using posetk::Poset;
using posetk::PointMask;

inline std::string data_path(const std::string& name) { return std::string(POSETK_DATA_DIR) + "/" + name; }

inline Poset load(const std::string& name) { return posetk::parse_poset(posetk::read_file(data_path(name))); }

// A fixture poset with the node order its printed matrices use.
struct Fixture {
  std::string file;
  std::vector<std::string> reference_order;
  IntMatrix t;
  IntMatrix t_inverse;
};

inline IntMatrix mat(Eigen::Index k, std::initializer_list<Integer> entries) {
  IntMatrix m(k, k);
  auto it = entries.begin();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = *it++;
  }
  return m;
}

inline std::vector<Fixture> fixtures() {
  return {
      {"vee.poset",
       {"x2", "x1", "x3"},
       mat(3, {1, 0, 0, 1, 1, 1, 0, 0, 1}),
       mat(3, {1, 0, 0, -1, 1, -1, 0, 0, 1})},
      {"pin.poset",
       {"x3", "x1", "x2", "x4"},
       mat(4, {1, 0, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1}),
       mat(4, {1, 0, 0, 0, -1, 1, 0, -1, 0, 0, 1, -1, 0, 0, 0, 1})},
      {"circle.poset",
       {"x3", "x1", "x2", "x4"},
       mat(4, {1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 0, 0, 1}),
       mat(4, {1, 0, 0, 0, -1, 1, 0, -1, -1, 0, 1, -1, 0, 0, 0, 1})},
      {"sphere.poset",
       {"x5", "x3", "x1", "x2", "x4", "x6"},
       mat(6, {1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 1, 1,
               1, 1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1}),
       mat(6, {1, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, -1, 1, -1, 1, 0, -1, 1,
               1, -1, 0, 1, -1, 1, -1, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 1})},
  };
}

// Permutation matrix P with (P t P^T) listing rows and columns in `order`.
inline IntMatrix permutation(const std::vector<std::string>& names, const std::vector<std::string>& order) {
  const auto k = static_cast<Eigen::Index>(names.size());
  IntMatrix p = IntMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto j = std::find(names.begin(), names.end(), order[static_cast<std::size_t>(i)]) - names.begin();
    p(i, j) = 1;
  }
  return p;
}

inline IntMatrix reorder(const IntMatrix& t, const std::vector<std::string>& names,
                         const std::vector<std::string>& order) {
  const IntMatrix p = permutation(names, order);
  return p * t * p.transpose();
}

// Random poset on n <= 7 points: a random DAG along a shuffled order,
// transitively closed. Labels are shuffled so that label order and order
// relation are unrelated.
inline Poset random_poset(std::mt19937& rng, std::size_t max_points = 7) {
  std::uniform_int_distribution<std::size_t> size(1, max_points);
  const std::size_t n = size(rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::shuffle(labels.begin(), labels.end(), rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double density = coin(rng) * 0.6;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng) < density) pairs.emplace_back(labels[i], labels[j]);
    }
  }
  std::vector<std::string> points = labels;
  std::shuffle(points.begin(), points.end(), rng);
  return Poset::from_pairs(points, pairs);
}

// Oracle: nonempty up-closed subsets by exhaustive search.
inline std::vector<PointMask> brute_closed_sets(const Poset& p) {
  std::vector<PointMask> out;
  const PointMask full = p.all();
  for (PointMask s = 1; s <= full; ++s) {
    bool closed = true;
    for (std::size_t x = 0; x < p.size() && closed; ++x) {
      if (!posetk::contains(s, x)) continue;
      for (std::size_t y = 0; y < p.size(); ++y) {
        if (p.leq(x, y) && !posetk::contains(s, y)) closed = false;
      }
    }
    if (closed) out.push_back(s);
  }
  return out;
}

// Point indices sorted by label: the order of the stable nodes.
inline std::vector<std::size_t> label_order(const Poset& p) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.label(a) < p.label(b); });
  return order;
}

// Oracle: T[y][x] = 1 iff y <= x, nodes in label order.
inline IntMatrix zeta_matrix(const Poset& p) {
  const auto order = label_order(p);
  const auto k = static_cast<Eigen::Index>(p.size());
  IntMatrix t(k, k);
  for (Eigen::Index y = 0; y < k; ++y) {
    for (Eigen::Index x = 0; x < k; ++x) {
      t(y, x) = p.leq(order[static_cast<std::size_t>(y)], order[static_cast<std::size_t>(x)]);
    }
  }
  return t;
}

// Point mask re-expressed over stable node positions.
inline std::uint64_t node_mask(const Poset& p, PointMask s) {
  const auto order = label_order(p);
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (posetk::contains(s, order[i])) out |= std::uint64_t{1} << i;
  }
  return out;
}

// Oracle: T^m v >= 0 for the first m <= m_max, by plain iteration.
inline int first_nonnegative_power(const IntMatrix& t, IntVector v, int m_max) {
  for (int m = 0; m <= m_max; ++m) {
    if ((v.array() >= 0).all()) return m;
    if (m < m_max) v = t * v;
  }
  return -1;
}

inline IntMatrix power(const IntMatrix& t, int m) {
  IntMatrix out = IntMatrix::Identity(t.rows(), t.cols());
  for (int i = 0; i < m; ++i) out = out * t;
  return out;
}

}  // namespace testing

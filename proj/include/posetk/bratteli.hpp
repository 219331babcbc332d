#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posetk/linalg.hpp"
#include "posetk/topology.hpp"

namespace posetk {

// Square nonnegative integer matrix with no zero row or column. Rows index
// the nodes of level n+1, columns the nodes of level n.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(IntMatrix entries);

  Eigen::Index dimension() const { return entries_.rows(); }
  const IntMatrix& matrix() const { return entries_; }
  Integer operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  friend bool operator==(const IncidenceMatrix& a, const IncidenceMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  IntMatrix entries_;
};

// Data behind one level of the poset construction. With K_n the first n
// closed sets, `family` is the lattice closure K_n', `atoms` are the blocks
// of the partition K_n induces, and `envelopes[j]` is the smallest member of
// K_n' containing `atoms[j]`.
struct LevelPartition {
  std::size_t level = 0;
  std::size_t closed_sets_used = 0;
  std::vector<PointMask> family;
  std::vector<PointMask> atoms;
  std::vector<PointMask> envelopes;
};

struct DiagramNode {
  Integer dimension = 1;
  // Block of the source poset this node stands for; 0 for diagrams built
  // directly from a matrix.
  PointMask atom = 0;
};

// A finite truncation of a Bratteli diagram. Level 0 is a single node of
// dimension 1; edges[n](k, j) is the number of edges from node j of level n
// to node k of level n + 1.
class BratteliDiagram {
 public:
  // Checks the dimension recursion d(n+1) = N d(n) at every level and, for
  // poset-derived diagrams, that multiplicities are 0 or 1.
  BratteliDiagram(std::vector<std::vector<DiagramNode>> levels, std::vector<IntMatrix> edges,
                  std::optional<std::size_t> stable_level,
                  std::vector<LevelPartition> partitions = {},
                  std::optional<Poset> source = std::nullopt);

  std::size_t depth() const { return levels_.size(); }
  const std::vector<std::vector<DiagramNode>>& levels() const { return levels_; }
  const std::vector<DiagramNode>& level(std::size_t n) const { return levels_.at(n); }
  const IntMatrix& edges(std::size_t n) const { return edges_.at(n); }
  std::size_t edge_count() const { return edges_.size(); }
  std::vector<Integer> dimensions(std::size_t n) const;

  // First level from which the node set and multiplicity matrix repeat;
  // empty when the truncation is too shallow to certify it.
  std::optional<std::size_t> stable_level() const { return stable_level_; }

  const std::vector<LevelPartition>& partitions() const { return partitions_; }
  const std::optional<Poset>& source() const { return source_; }

  // Label of a node: the member of its atom for singleton atoms, the braced
  // member list otherwise, or "n<i>" when there is no source poset.
  std::string node_label(std::size_t level, std::size_t index) const;

 private:
  std::vector<std::vector<DiagramNode>> levels_;
  std::vector<IntMatrix> edges_;
  std::optional<std::size_t> stable_level_;
  std::vector<LevelPartition> partitions_;
  std::optional<Poset> source_;
};

// Smallest family containing `family` and closed under pairwise union and
// intersection, in the standard family order.
std::vector<PointMask> lattice_closure(const Poset& universe, std::span<const PointMask> family);

// Blocks of points sharing the same membership pattern across `family`,
// sorted by their least label.
std::vector<PointMask> partition_atoms(const Poset& universe, std::span<const PointMask> family);

// Intersection of the members of `closure_family` that contain `atom`.
PointMask envelope(PointMask atom, std::span<const PointMask> closure_family);

// Partition data for diagram level `level`, which uses the first
// min(level + 1, closed_order.size()) closed sets.
LevelPartition level_partition(const Poset& p, std::span<const PointMask> closed_order,
                               std::size_t level);

// Number of closed sets plus two: enough levels to see the stable matrix
// twice.
std::size_t default_depth(const Poset& p);

BratteliDiagram build_diagram(const Poset& p, std::optional<std::size_t> depth = std::nullopt);

// Same construction with a caller-chosen enumeration of the closed sets. The
// order must list every nonempty closed set once, full space first.
BratteliDiagram build_diagram(const Poset& p, std::vector<PointMask> closed_order,
                              std::optional<std::size_t> depth = std::nullopt);

// Diagram whose levels from 1 on repeat the matrix T (e.g. the Penrose
// algebra). Level 1 has one node per row of T, each fed once by the root.
BratteliDiagram stationary_diagram(const IncidenceMatrix& t, std::size_t depth);

// Multiplicity matrix of the stable part. Throws DomainError when the
// diagram has not been shown to stabilise.
IncidenceMatrix stable_incidence(const BratteliDiagram& d);

}  // namespace posetk

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace posetk {

// Subset of a poset's points, bit i standing for point i.
using PointMask = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;

inline int cardinality(PointMask s) { return __builtin_popcountll(s); }
inline bool contains(PointMask s, std::size_t i) { return (s >> i) & 1u; }
inline PointMask singleton(std::size_t i) { return PointMask{1} << i; }
inline bool is_subset(PointMask a, PointMask b) { return (a & ~b) == 0; }

// A sample of a space together with a covering by subsets of it.
struct GroundSpace {
  std::vector<std::string> points;
  std::vector<std::vector<std::string>> cover;

  // Checks unique identifiers, nonempty cover sets drawn from `points`, and
  // that every point is covered. Throws DomainError naming the culprit.
  void validate() const;
};

// A finite T0 space, stored as its specialization order. Points keep the
// order in which they were supplied; labels are opaque strings.
class Poset {
 public:
  // `below[i]` holds every j with j <= i. The relation is checked for
  // reflexivity, antisymmetry and transitivity.
  Poset(std::vector<std::string> points, std::vector<PointMask> below);

  // Builds the reflexive-transitive closure of `pairs` (x <= y).
  static Poset from_pairs(std::vector<std::string> points,
                          const std::vector<std::pair<std::string, std::string>>& pairs);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& label(std::size_t i) const { return points_[i]; }
  std::size_t index_of(std::string_view label) const;

  bool leq(std::size_t x, std::size_t y) const { return contains(below_[y], x); }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
  PointMask down_set(std::size_t x) const { return below_[x]; }
  PointMask up_set(std::size_t x) const { return above_[x]; }
  PointMask all() const;

  bool is_open(PointMask s) const;
  bool is_closed(PointMask s) const;

  // Position of point i when labels are sorted lexicographically.
  std::size_t label_rank(std::size_t i) const { return rank_[i]; }
  // Member with the lexicographically least label; `s` must be nonempty.
  std::size_t least_member(PointMask s) const;
  // Labels of the members of `s`, sorted lexicographically.
  std::vector<std::string> labels_of(PointMask s) const;
  PointMask mask_of(const std::vector<std::string>& labels) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.points_ == b.points_ && a.below_ == b.below_;
  }

 private:
  std::vector<std::string> points_;
  std::vector<PointMask> below_;
  std::vector<PointMask> above_;
  std::vector<std::size_t> rank_;
};

struct HasseDiagram {
  // levels[i] is the level of point i; minimal points sit at level 0.
  std::vector<int> levels;
  // Covering pairs (x, y): x immediately below y.
  std::vector<std::pair<std::size_t, std::size_t>> links;

  int level_count() const;
};

// Strict weak order used for every family of sets: larger sets first, ties
// broken by comparing the sorted member labels lexicographically.
bool family_before(const Poset& p, PointMask a, PointMask b);

// Sorts by family_before and moves the full space to the front if present.
void sort_family(const Poset& p, std::vector<PointMask>& family);

// Identifies points that no cover set separates and orders the classes by
// specialization. Classes are labelled by their least member and appear in
// order of first occurrence.
Poset quotient_by_covering(const GroundSpace& space);

// Specialization order of the topology generated by `basis`. Rejects input in
// which two points have identical basis membership.
Poset order_from_basis(std::vector<std::string> points,
                       const std::vector<std::vector<std::string>>& basis);

// O_x = { y : y <= x }.
PointMask minimal_open_set(const Poset& p, std::string_view x);

// All nonempty up-closed subsets, full space first.
std::vector<PointMask> closed_sets(const Poset& p);

HasseDiagram hasse(const Poset& p);

}  // namespace posetk

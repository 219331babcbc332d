#include "posetk/bratteli.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "posetk/errors.hpp"

namespace posetk {

IncidenceMatrix::IncidenceMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DomainError("incidence matrix must be square and nonempty");
  }
  if (!is_nonnegative(entries_)) throw DomainError("incidence matrix has a negative entry");
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    if ((entries_.row(i).array() == 0).all()) {
      throw DomainError("incidence matrix row " + std::to_string(i + 1) + " is zero");
    }
    if ((entries_.col(i).array() == 0).all()) {
      throw DomainError("incidence matrix column " + std::to_string(i + 1) + " is zero");
    }
  }
}

BratteliDiagram::BratteliDiagram(std::vector<std::vector<DiagramNode>> levels,
                                 std::vector<IntMatrix> edges,
                                 std::optional<std::size_t> stable_level,
                                 std::vector<LevelPartition> partitions,
                                 std::optional<Poset> source)
    : levels_(std::move(levels)),
      edges_(std::move(edges)),
      stable_level_(stable_level),
      partitions_(std::move(partitions)),
      source_(std::move(source)) {
  if (levels_.empty()) throw DomainError("diagram has no levels");
  if (levels_[0].size() != 1 || levels_[0][0].dimension != 1) {
    throw DomainError("level 0 must be a single node of dimension 1");
  }
  if (edges_.size() + 1 != levels_.size()) throw DomainError("one edge matrix is needed per pair of levels");
  for (std::size_t n = 0; n < edges_.size(); ++n) {
    const IntMatrix& e = edges_[n];
    if (static_cast<std::size_t>(e.cols()) != levels_[n].size() ||
        static_cast<std::size_t>(e.rows()) != levels_[n + 1].size()) {
      throw DomainError("edge matrix " + std::to_string(n) + " has the wrong shape");
    }
    if (!is_nonnegative(e)) throw DomainError("negative multiplicity at level " + std::to_string(n));
    if (source_ && (e.array() > 1).any()) {
      throw DomainError("multiplicity above 1 between levels " + std::to_string(n) + " and " +
                        std::to_string(n + 1));
    }
    for (Eigen::Index k = 0; k < e.rows(); ++k) {
      Integer d = 0;
      for (Eigen::Index j = 0; j < e.cols(); ++j) {
        d = checked_add(d, checked_mul(e(k, j), levels_[n][static_cast<std::size_t>(j)].dimension));
      }
      if (d != levels_[n + 1][static_cast<std::size_t>(k)].dimension) {
        throw DomainError("dimension recursion fails at level " + std::to_string(n + 1) + ", node " +
                          std::to_string(k));
      }
    }
  }
  if (stable_level_ && *stable_level_ >= levels_.size()) throw DomainError("stable level beyond depth");
}

std::vector<Integer> BratteliDiagram::dimensions(std::size_t n) const {
  std::vector<Integer> out;
  for (const auto& node : level(n)) out.push_back(node.dimension);
  return out;
}

std::string BratteliDiagram::node_label(std::size_t n, std::size_t index) const {
  if (!source_) return "n" + std::to_string(index + 1);
  const auto labels = source_->labels_of(level(n).at(index).atom);
  if (labels.size() == 1) return labels.front();
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
  os << '}';
  return os.str();
}

std::vector<PointMask> lattice_closure(const Poset& universe, std::span<const PointMask> family) {
  // The empty set is left out, as it is for closed-set enumeration.
  std::set<PointMask> members;
  for (PointMask s : family) {
    if (s != 0) members.insert(s);
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<PointMask> snapshot(members.begin(), members.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        for (PointMask s : {snapshot[i] | snapshot[j], snapshot[i] & snapshot[j]}) {
          if (s != 0 && members.insert(s).second) grew = true;
        }
      }
    }
  }
  std::vector<PointMask> out(members.begin(), members.end());
  sort_family(universe, out);
  return out;
}

std::vector<PointMask> partition_atoms(const Poset& universe, std::span<const PointMask> family) {
  std::map<std::vector<bool>, PointMask> blocks;
  for (std::size_t x = 0; x < universe.size(); ++x) {
    std::vector<bool> pattern;
    pattern.reserve(family.size());
    for (PointMask s : family) pattern.push_back(contains(s, x));
    blocks[pattern] |= singleton(x);
  }
  std::vector<PointMask> atoms;
  for (const auto& [pattern, block] : blocks) atoms.push_back(block);
  std::sort(atoms.begin(), atoms.end(), [&](PointMask a, PointMask b) {
    return universe.label_rank(universe.least_member(a)) < universe.label_rank(universe.least_member(b));
  });
  return atoms;
}

PointMask envelope(PointMask atom, std::span<const PointMask> closure_family) {
  if (atom == 0) throw DomainError("envelope of an empty atom");
  PointMask result = ~PointMask{0};
  bool found = false;
  for (PointMask s : closure_family) {
    if (is_subset(atom, s)) {
      result &= s;
      found = true;
    }
  }
  if (!found) throw DomainError("no member of the family contains the atom");
  return result;
}

LevelPartition level_partition(const Poset& p, std::span<const PointMask> closed_order, std::size_t level) {
  LevelPartition part;
  part.level = level;
  part.closed_sets_used = std::min(level + 1, closed_order.size());
  const auto used = closed_order.first(part.closed_sets_used);
  part.family = lattice_closure(p, used);
  part.atoms = partition_atoms(p, used);
  for (PointMask a : part.atoms) part.envelopes.push_back(envelope(a, part.family));
  return part;
}

std::size_t default_depth(const Poset& p) { return closed_sets(p).size() + 2; }

BratteliDiagram build_diagram(const Poset& p, std::optional<std::size_t> depth) {
  return build_diagram(p, closed_sets(p), depth);
}

BratteliDiagram build_diagram(const Poset& p, std::vector<PointMask> closed_order,
                              std::optional<std::size_t> depth) {
  {
    std::vector<PointMask> expected = closed_sets(p);
    std::vector<PointMask> given = closed_order;
    std::sort(expected.begin(), expected.end());
    std::sort(given.begin(), given.end());
    if (given != expected) throw DomainError("closed-set order must list every nonempty closed set once");
    if (closed_order.front() != p.all()) throw DomainError("closed-set order must start with the full space");
  }
  const std::size_t count = closed_order.size();
  const std::size_t levels_wanted = depth.value_or(count + 2);
  if (levels_wanted < 1) throw DomainError("diagram depth must be at least 1");

  std::vector<LevelPartition> parts;
  for (std::size_t n = 0; n < levels_wanted; ++n) parts.push_back(level_partition(p, closed_order, n));

  std::vector<std::vector<DiagramNode>> levels;
  std::vector<IntMatrix> edges;
  levels.push_back({DiagramNode{1, parts[0].atoms.at(0)}});
  for (std::size_t n = 0; n + 1 < levels_wanted; ++n) {
    const auto& from = parts[n].atoms;
    const auto& to = parts[n + 1];
    IntMatrix e = IntMatrix::Zero(static_cast<Eigen::Index>(to.atoms.size()),
                                  static_cast<Eigen::Index>(from.size()));
    std::vector<DiagramNode> next;
    for (std::size_t k = 0; k < to.atoms.size(); ++k) {
      Integer d = 0;
      for (std::size_t j = 0; j < from.size(); ++j) {
        if ((from[j] & to.envelopes[k]) != 0) {
          e(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = 1;
          d = checked_add(d, levels[n][j].dimension);
        }
      }
      next.push_back(DiagramNode{d, to.atoms[k]});
    }
    levels.push_back(std::move(next));
    edges.push_back(std::move(e));
  }

  // Stability can only be certified once a matrix between two saturated
  // levels (all closed sets in use) is present.
  std::optional<std::size_t> stable;
  if (levels_wanted >= count + 1) {
    const IntMatrix& last = edges.back();
    std::size_t candidate = edges.size() - 1;
    while (candidate > 0) {
      const std::size_t prev = candidate - 1;
      const bool separated = std::all_of(parts[prev].atoms.begin(), parts[prev].atoms.end(),
                                         [](PointMask a) { return cardinality(a) == 1; });
      if (!separated || edges[prev].rows() != last.rows() || edges[prev].cols() != last.cols() ||
          edges[prev] != last) {
        break;
      }
      candidate = prev;
    }
    stable = candidate;
    for (std::size_t n = candidate; n < parts.size(); ++n) {
      if (parts[n].atoms != parts[candidate].atoms) throw DomainError("stable part does not repeat");
    }
  }
  return BratteliDiagram(std::move(levels), std::move(edges), stable, std::move(parts), p);
}

BratteliDiagram stationary_diagram(const IncidenceMatrix& t, std::size_t depth) {
  if (depth < 1) throw DomainError("diagram depth must be at least 1");
  const Eigen::Index k = t.dimension();
  std::vector<std::vector<DiagramNode>> levels{{DiagramNode{}}};
  std::vector<IntMatrix> edges;
  if (depth >= 2) {
    levels.emplace_back(static_cast<std::size_t>(k), DiagramNode{});
    edges.push_back(IntMatrix::Ones(k, 1));
  }
  for (std::size_t n = 2; n < depth; ++n) {
    const auto& prev = levels.back();
    std::vector<DiagramNode> next(static_cast<std::size_t>(k));
    for (Eigen::Index r = 0; r < k; ++r) {
      Integer d = 0;
      for (Eigen::Index c = 0; c < k; ++c) {
        d = checked_add(d, checked_mul(t(r, c), prev[static_cast<std::size_t>(c)].dimension));
      }
      next[static_cast<std::size_t>(r)].dimension = d;
    }
    levels.push_back(std::move(next));
    edges.push_back(t.matrix());
  }
  std::optional<std::size_t> stable;
  if (depth >= 3) stable = 1;
  return BratteliDiagram(std::move(levels), std::move(edges), stable);
}

IncidenceMatrix stable_incidence(const BratteliDiagram& d) {
  const auto stable = d.stable_level();
  if (!stable || *stable + 1 >= d.depth()) {
    throw DomainError("diagram of depth " + std::to_string(d.depth()) + " is not yet stable");
  }
  return IncidenceMatrix(d.edges(*stable));
}

}  // namespace posetk

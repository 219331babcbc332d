#include "posetk/topology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "posetk/errors.hpp"

namespace posetk {

namespace {

void check_unique(const std::vector<std::string>& points) {
  std::set<std::string_view> seen;
  for (const auto& x : points) {
    if (x.empty()) throw DomainError("empty point identifier");
    if (!seen.insert(x).second) throw DomainError("duplicate point identifier '" + x + "'");
  }
}

// Indices sorted so that x < y in the order implies x comes first.
std::vector<std::size_t> linear_extension(const Poset& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cardinality(p.down_set(a)) < cardinality(p.down_set(b));
  });
  return order;
}

// Specialization order from membership signatures: x <= y iff every set
// containing y contains x.
std::vector<PointMask> order_from_signatures(const std::vector<std::vector<bool>>& sig) {
  const std::size_t n = sig.size();
  std::vector<PointMask> below(n, 0);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      bool ok = true;
      for (std::size_t s = 0; s < sig[y].size() && ok; ++s) {
        if (sig[y][s] && !sig[x][s]) ok = false;
      }
      if (ok) below[y] |= singleton(x);
    }
  }
  return below;
}

}  // namespace

void GroundSpace::validate() const {
  check_unique(points);
  std::map<std::string_view, bool> covered;
  for (const auto& x : points) covered[x] = false;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover[i].empty()) throw DomainError("cover set " + std::to_string(i + 1) + " is empty");
    for (const auto& x : cover[i]) {
      auto it = covered.find(x);
      if (it == covered.end()) {
        throw DomainError("cover set " + std::to_string(i + 1) + " mentions unknown point '" + x + "'");
      }
      it->second = true;
    }
  }
  for (const auto& x : points) {
    if (!covered[x]) throw DomainError("point '" + x + "' is not covered by any set");
  }
}

Poset::Poset(std::vector<std::string> points, std::vector<PointMask> below)
    : points_(std::move(points)), below_(std::move(below)) {
  const std::size_t n = points_.size();
  if (n == 0) throw DomainError("poset has no points");
  if (n > kMaxPoints) throw DomainError("poset has more than 64 points");
  if (below_.size() != n) throw DomainError("order relation does not match the point list");
  check_unique(points_);

  const PointMask full = all();
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_subset(below_[i], full)) throw DomainError("order relation refers to unknown points");
    if (!contains(below_[i], i)) throw DomainError("order is not reflexive at '" + points_[i] + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!contains(below_[i], j)) continue;
      if (i != j && contains(below_[j], i)) {
        throw DomainError("order is not antisymmetric: '" + points_[i] + "' and '" + points_[j] +
                          "' precede each other");
      }
      if (!is_subset(below_[j], below_[i])) {
        throw DomainError("order is not transitive below '" + points_[i] + "'");
      }
    }
  }

  above_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (contains(below_[i], j)) above_[j] |= singleton(i);
    }
  }

  std::vector<std::size_t> by_label(n);
  std::iota(by_label.begin(), by_label.end(), 0);
  std::sort(by_label.begin(), by_label.end(),
            [&](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
  rank_.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank_[by_label[r]] = r;
}

Poset Poset::from_pairs(std::vector<std::string> points,
                        const std::vector<std::pair<std::string, std::string>>& pairs) {
  const std::size_t n = points.size();
  if (n == 0) throw DomainError("poset has no points");
  if (n > kMaxPoints) throw DomainError("poset has more than 64 points");
  check_unique(points);
  auto find = [&](const std::string& x) {
    auto it = std::find(points.begin(), points.end(), x);
    if (it == points.end()) throw DomainError("order relation mentions unknown point '" + x + "'");
    return static_cast<std::size_t>(it - points.begin());
  };

  std::vector<PointMask> below(n);
  for (std::size_t i = 0; i < n; ++i) below[i] = singleton(i);
  for (const auto& [x, y] : pairs) below[find(y)] |= singleton(find(x));

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      PointMask grown = below[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (contains(below[i], j)) grown |= below[j];
      }
      if (grown != below[i]) {
        below[i] = grown;
        changed = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (contains(below[i], j) && contains(below[j], i)) {
        throw DomainError("order relation has a cycle through '" + points[i] + "' and '" + points[j] + "'");
      }
    }
  }
  return Poset(std::move(points), std::move(below));
}

std::size_t Poset::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == label) return i;
  }
  throw DomainError("unknown point '" + std::string(label) + "'");
}

PointMask Poset::all() const {
  return size() == kMaxPoints ? ~PointMask{0} : (PointMask{1} << size()) - 1;
}

bool Poset::is_open(PointMask s) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (contains(s, i) && !is_subset(below_[i], s)) return false;
  }
  return true;
}

bool Poset::is_closed(PointMask s) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (contains(s, i) && !is_subset(above_[i], s)) return false;
  }
  return true;
}

std::size_t Poset::least_member(PointMask s) const {
  std::size_t best = size();
  for (std::size_t i = 0; i < size(); ++i) {
    if (contains(s, i) && (best == size() || rank_[i] < rank_[best])) best = i;
  }
  if (best == size()) throw DomainError("least member of an empty set");
  return best;
}

std::vector<std::string> Poset::labels_of(PointMask s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (contains(s, i)) out.push_back(points_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PointMask Poset::mask_of(const std::vector<std::string>& labels) const {
  PointMask s = 0;
  for (const auto& x : labels) s |= singleton(index_of(x));
  return s;
}

int HasseDiagram::level_count() const {
  return levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end()) + 1;
}

bool family_before(const Poset& p, PointMask a, PointMask b) {
  const int ca = cardinality(a);
  const int cb = cardinality(b);
  if (ca != cb) return ca > cb;
  auto ranks = [&](PointMask s) {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (contains(s, i)) r.push_back(p.label_rank(i));
    }
    std::sort(r.begin(), r.end());
    return r;
  };
  return ranks(a) < ranks(b);
}

void sort_family(const Poset& p, std::vector<PointMask>& family) {
  std::sort(family.begin(), family.end(),
            [&](PointMask a, PointMask b) { return family_before(p, a, b); });
  auto full = std::find(family.begin(), family.end(), p.all());
  if (full != family.end()) std::rotate(family.begin(), full, full + 1);
}

Poset quotient_by_covering(const GroundSpace& space) {
  space.validate();
  const std::size_t n = space.points.size();
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[space.points[i]] = i;

  std::vector<std::vector<bool>> sig(n, std::vector<bool>(space.cover.size(), false));
  for (std::size_t s = 0; s < space.cover.size(); ++s) {
    for (const auto& x : space.cover[s]) sig[index[x]][s] = true;
  }

  std::map<std::vector<bool>, std::size_t> class_of_sig;
  std::vector<std::vector<bool>> class_sig;
  std::vector<std::string> class_label;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = class_of_sig.emplace(sig[i], class_sig.size());
    if (fresh) {
      class_sig.push_back(sig[i]);
      class_label.push_back(space.points[i]);
    } else if (space.points[i] < class_label[it->second]) {
      class_label[it->second] = space.points[i];
    }
  }
  if (class_sig.size() > kMaxPoints) throw DomainError("quotient has more than 64 points");
  return Poset(std::move(class_label), order_from_signatures(class_sig));
}

Poset order_from_basis(std::vector<std::string> points,
                       const std::vector<std::vector<std::string>>& basis) {
  if (points.empty()) throw DomainError("poset has no points");
  if (points.size() > kMaxPoints) throw DomainError("poset has more than 64 points");
  check_unique(points);
  const std::size_t n = points.size();
  std::vector<std::vector<bool>> sig(n, std::vector<bool>(basis.size(), false));
  for (std::size_t s = 0; s < basis.size(); ++s) {
    for (const auto& x : basis[s]) {
      auto it = std::find(points.begin(), points.end(), x);
      if (it == points.end()) {
        throw DomainError("basis set " + std::to_string(s + 1) + " mentions unknown point '" + x + "'");
      }
      sig[static_cast<std::size_t>(it - points.begin())][s] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(sig[i].begin(), sig[i].end(), true) == sig[i].end()) {
      throw DomainError("point '" + points[i] + "' lies in no basis set");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (sig[i] == sig[j]) {
        throw DomainError("basis is not T0: points '" + points[j] + "' and '" + points[i] +
                          "' lie in the same basis sets");
      }
    }
  }
  return Poset(std::move(points), order_from_signatures(sig));
}

PointMask minimal_open_set(const Poset& p, std::string_view x) {
  return p.down_set(p.index_of(x));
}

std::vector<PointMask> closed_sets(const Poset& p) {
  // Decide points from the top down so that everything above a point is
  // settled before the point itself.
  std::vector<std::size_t> order = linear_extension(p);
  std::reverse(order.begin(), order.end());

  std::vector<PointMask> out;
  std::function<void(std::size_t, PointMask)> visit = [&](std::size_t k, PointMask chosen) {
    if (k == order.size()) {
      if (chosen != 0) out.push_back(chosen);
      return;
    }
    const std::size_t x = order[k];
    visit(k + 1, chosen);
    if (is_subset(p.up_set(x) & ~singleton(x), chosen)) visit(k + 1, chosen | singleton(x));
  };
  visit(0, 0);
  sort_family(p, out);
  return out;
}

HasseDiagram hasse(const Poset& p) {
  const std::size_t n = p.size();
  HasseDiagram h;
  h.levels.assign(n, 0);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!p.less(x, y)) continue;
      const PointMask between = (p.down_set(y) & ~singleton(y)) & (p.up_set(x) & ~singleton(x));
      if (between == 0) h.links.emplace_back(x, y);
    }
  }
  std::sort(h.links.begin(), h.links.end());
  for (std::size_t y : linear_extension(p)) {
    for (const auto& [a, b] : h.links) {
      if (b == y) h.levels[y] = std::max(h.levels[y], h.levels[a] + 1);
    }
  }
  return h;
}

}  // namespace posetk

#include "posetk/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace posetk {

namespace {

using Colouring = std::vector<std::size_t>;

// Renumbers arbitrary comparable keys to 0..c-1 by sorted key value.
template <typename Key>
Colouring rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colouring out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  }
  return out;
}

std::size_t colour_count(const Colouring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

Colouring refine(const Poset& p, Colouring colours) {
  const std::size_t n = p.size();
  using Key = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
  while (true) {
    std::vector<Key> keys(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::size_t> down, up;
      for (std::size_t y = 0; y < n; ++y) {
        if (p.less(y, x)) down.push_back(colours[y]);
        if (p.less(x, y)) up.push_back(colours[y]);
      }
      std::sort(down.begin(), down.end());
      std::sort(up.begin(), up.end());
      keys[x] = Key{colours[x], std::move(down), std::move(up)};
    }
    Colouring next = rank_keys(keys);
    if (colour_count(next) == colour_count(colours)) return next;
    colours = std::move(next);
  }
}

bool twins(const Poset& p, std::size_t u, std::size_t v) {
  if (p.leq(u, v) || p.leq(v, u)) return false;
  for (std::size_t w = 0; w < p.size(); ++w) {
    if (w == u || w == v) continue;
    if (p.leq(u, w) != p.leq(v, w) || p.leq(w, u) != p.leq(w, v)) return false;
  }
  return true;
}

std::vector<bool> relation_under(const Poset& p, const Colouring& position) {
  const std::size_t n = p.size();
  std::vector<bool> rel(n * n, false);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (p.leq(x, y)) rel[position[x] * n + position[y]] = true;
    }
  }
  return rel;
}

void search(const Poset& p, const Colouring& colours, std::optional<CanonicalForm>& best) {
  const Colouring refined = refine(p, colours);
  const std::size_t n = p.size();
  if (colour_count(refined) == n) {
    std::vector<bool> rel = relation_under(p, refined);
    if (!best || rel < best->relation) best = CanonicalForm{refined, std::move(rel)};
    return;
  }
  // First cell with more than one member.
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t c : refined) ++counts[c];
  std::size_t cell = 0;
  while (counts[cell] < 2) ++cell;

  std::vector<std::size_t> tried;
  for (std::size_t v = 0; v < n; ++v) {
    if (refined[v] != cell) continue;
    if (std::any_of(tried.begin(), tried.end(), [&](std::size_t u) { return twins(p, u, v); })) continue;
    tried.push_back(v);
    std::vector<std::pair<std::size_t, int>> keys(n);
    for (std::size_t x = 0; x < n; ++x) keys[x] = {refined[x], x == v ? 0 : 1};
    search(p, rank_keys(keys), best);
  }
}

}  // namespace

CanonicalForm canonical_form(const Poset& p) {
  const std::size_t n = p.size();
  const HasseDiagram h = hasse(p);
  std::vector<std::size_t> lower(n, 0), upper(n, 0);
  for (const auto& [x, y] : h.links) {
    ++upper[x];
    ++lower[y];
  }
  using Key = std::tuple<int, int, std::size_t, std::size_t>;
  std::vector<Key> keys(n);
  for (std::size_t x = 0; x < n; ++x) {
    keys[x] = Key{cardinality(p.down_set(x)), cardinality(p.up_set(x)), lower[x], upper[x]};
  }
  std::optional<CanonicalForm> best;
  search(p, rank_keys(keys), best);
  return *best;
}

bool is_isomorphic(const Poset& a, const Poset& b) {
  if (a.size() != b.size()) return false;
  return canonical_form(a).relation == canonical_form(b).relation;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const Poset& a, const Poset& b) {
  if (a.size() != b.size()) return std::nullopt;
  const CanonicalForm ca = canonical_form(a);
  const CanonicalForm cb = canonical_form(b);
  if (ca.relation != cb.relation) return std::nullopt;
  std::vector<std::size_t> from_canonical(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) from_canonical[cb.position[i]] = i;
  std::vector<std::size_t> map(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) map[i] = from_canonical[ca.position[i]];
  return map;
}

}  // namespace posetk

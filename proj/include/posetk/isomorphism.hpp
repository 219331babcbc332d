#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "posetk/topology.hpp"

namespace posetk {

// Canonical labelling of a poset: `position[i]` is the canonical index of
// point i and `relation` is the row-major order matrix in canonical indices.
// Two posets are isomorphic exactly when their relations agree.
struct CanonicalForm {
  std::vector<std::size_t> position;
  std::vector<bool> relation;
};

// Colour refinement on (down-set size, up-set size, cover counts) followed by
// individualisation with backtracking; the lexicographically least relation
// over the search leaves is kept.
CanonicalForm canonical_form(const Poset& p);

bool is_isomorphic(const Poset& a, const Poset& b);

// map[i] is the point of `b` matched with point i of `a`.
std::optional<std::vector<std::size_t>> find_isomorphism(const Poset& a, const Poset& b);

}  // namespace posetk

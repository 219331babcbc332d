#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "posetk/bratteli.hpp"
#include "posetk/topology.hpp"

namespace posetk {

// Subset of the stable nodes, bit i standing for stable node i.
using NodeMask = std::uint64_t;

// An ideal of the AF algebra, encoded by the nodes of its subdiagram. The
// stable selection determines everything; `by_level` holds the selection at
// each level of the truncation, recovered by backward completion.
struct IdealSubdiagram {
  NodeMask selected = 0;
  std::vector<NodeMask> by_level;
  // First level with a selected node; empty for the zero ideal.
  std::optional<std::size_t> first_level;

  bool is_zero() const { return selected == 0; }
  friend bool operator==(const IdealSubdiagram& a, const IdealSubdiagram& b) {
    return a.selected == b.selected;
  }
};

struct PrimSpectrum {
  std::vector<IdealSubdiagram> ideals;
  // Points are named "0" for the zero ideal and "I<i>" after the position in
  // nontrivial_ideals otherwise; the order is inclusion of stable node sets.
  Poset poset;
};

// Stable nodes that are forward closed (i) and backward complete (ii) under
// the stable matrix. Includes the zero ideal and the whole algebra; larger
// sets first, ties by the sorted node indices.
std::vector<IdealSubdiagram> ideal_subdiagrams(const BratteliDiagram& d);

// Same list without the zero ideal and the whole algebra.
std::vector<IdealSubdiagram> nontrivial_ideals(const BratteliDiagram& d);

// Condition (iii): some later node outside the ideal is reached, along paths
// of equal length, from every node outside it. The whole algebra is never
// primitive.
bool is_primitive(const IdealSubdiagram& ideal, const BratteliDiagram& d);

// Whether every node can be routed to one common later node.
bool zero_ideal_primitive(const BratteliDiagram& d);

// Primitive ideals ordered by inclusion.
PrimSpectrum prim_poset(const BratteliDiagram& d);

// Whether the spectrum of the poset's diagram is order-isomorphic to it.
bool roundtrip_check(const Poset& p);

}  // namespace posetk

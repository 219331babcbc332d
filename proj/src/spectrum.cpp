#include "posetk/spectrum.hpp"

#include <algorithm>
#include <functional>

#include "posetk/errors.hpp"
#include "posetk/isomorphism.hpp"

namespace posetk {

namespace {

struct StablePart {
  IncidenceMatrix t;
  std::size_t level;
  std::size_t k;
  std::vector<NodeMask> successors;  // successors[j]: nodes one level down reached from j
  NodeMask all;
};

StablePart stable_part(const BratteliDiagram& d) {
  IncidenceMatrix t = stable_incidence(d);
  const auto k = static_cast<std::size_t>(t.dimension());
  if (k > 64) throw DomainError("stable part has more than 64 nodes");
  std::vector<NodeMask> succ(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      if (t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0) succ[j] |= NodeMask{1} << i;
    }
  }
  const NodeMask all = k == 64 ? ~NodeMask{0} : (NodeMask{1} << k) - 1;
  return StablePart{std::move(t), *d.stable_level(), k, std::move(succ), all};
}

bool has(NodeMask s, std::size_t i) { return (s >> i) & 1u; }

// Forward closures (reach[j] contains j) and their reverse.
void closures(const StablePart& sp, std::vector<NodeMask>& reach, std::vector<NodeMask>& coreach) {
  reach.assign(sp.k, 0);
  for (std::size_t j = 0; j < sp.k; ++j) {
    NodeMask r = NodeMask{1} << j;
    for (NodeMask prev = 0; prev != r;) {
      prev = r;
      for (std::size_t i = 0; i < sp.k; ++i) {
        if (has(r, i)) r |= sp.successors[i];
      }
    }
    reach[j] = r;
  }
  coreach.assign(sp.k, 0);
  for (std::size_t j = 0; j < sp.k; ++j) {
    for (std::size_t i = 0; i < sp.k; ++i) {
      if (has(reach[j], i)) coreach[i] |= NodeMask{1} << j;
    }
  }
}

IdealSubdiagram complete_backwards(const BratteliDiagram& d, const StablePart& sp, NodeMask selected) {
  IdealSubdiagram ideal;
  ideal.selected = selected;
  ideal.by_level.assign(d.depth(), 0);
  for (std::size_t n = sp.level; n < d.depth(); ++n) ideal.by_level[n] = selected;
  for (std::size_t n = sp.level; n-- > 0;) {
    const IntMatrix& e = d.edges(n);
    NodeMask here = 0;
    for (Eigen::Index j = 0; j < e.cols(); ++j) {
      bool all_selected = true;
      for (Eigen::Index i = 0; i < e.rows() && all_selected; ++i) {
        if (e(i, j) > 0 && !has(ideal.by_level[n + 1], static_cast<std::size_t>(i))) all_selected = false;
      }
      if (all_selected) here |= NodeMask{1} << j;
    }
    ideal.by_level[n] = here;
  }
  for (std::size_t n = 0; n < d.depth(); ++n) {
    if (ideal.by_level[n] != 0) {
      ideal.first_level = n;
      break;
    }
  }
  return ideal;
}

std::vector<std::size_t> members(NodeMask s, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) {
    if (has(s, i)) out.push_back(i);
  }
  return out;
}

bool primitive_on(const StablePart& sp, NodeMask selected) {
  if (selected == sp.all) return false;
  const NodeMask outside = sp.all & ~selected;
  const BoolMatrix s = support(sp.t.matrix());
  for (const BoolMatrix& power : boolean_powers(s)) {
    for (std::size_t target = 0; target < sp.k; ++target) {
      if (!has(outside, target)) continue;
      bool reached_by_all = true;
      for (std::size_t source = 0; source < sp.k && reached_by_all; ++source) {
        if (has(outside, source) &&
            !power(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(source))) {
          reached_by_all = false;
        }
      }
      if (reached_by_all) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<IdealSubdiagram> ideal_subdiagrams(const BratteliDiagram& d) {
  const StablePart sp = stable_part(d);
  std::vector<NodeMask> reach, coreach;
  closures(sp, reach, coreach);

  // Forward-closed sets: branch on each undecided node, propagating the
  // choice through reach (include) or coreach (exclude).
  std::vector<NodeMask> forward_closed;
  std::function<void(std::size_t, NodeMask, NodeMask)> branch = [&](std::size_t j, NodeMask in, NodeMask out) {
    if (j == sp.k) {
      forward_closed.push_back(in);
      return;
    }
    if (has(in | out, j)) {
      branch(j + 1, in, out);
      return;
    }
    branch(j + 1, in | reach[j], out);
    branch(j + 1, in, out | coreach[j]);
  };
  branch(0, 0, 0);

  std::vector<NodeMask> ideals;
  for (NodeMask s : forward_closed) {
    bool complete = true;
    for (std::size_t j = 0; j < sp.k && complete; ++j) {
      if (!has(s, j) && (sp.successors[j] & ~s) == 0) complete = false;
    }
    if (complete) ideals.push_back(s);
  }
  std::sort(ideals.begin(), ideals.end(), [&](NodeMask a, NodeMask b) {
    const int ca = __builtin_popcountll(a);
    const int cb = __builtin_popcountll(b);
    if (ca != cb) return ca > cb;
    return members(a, sp.k) < members(b, sp.k);
  });

  std::vector<IdealSubdiagram> out;
  out.reserve(ideals.size());
  for (NodeMask s : ideals) out.push_back(complete_backwards(d, sp, s));
  return out;
}

std::vector<IdealSubdiagram> nontrivial_ideals(const BratteliDiagram& d) {
  const StablePart sp = stable_part(d);
  std::vector<IdealSubdiagram> out;
  for (auto& ideal : ideal_subdiagrams(d)) {
    if (ideal.selected != 0 && ideal.selected != sp.all) out.push_back(std::move(ideal));
  }
  return out;
}

bool is_primitive(const IdealSubdiagram& ideal, const BratteliDiagram& d) {
  return primitive_on(stable_part(d), ideal.selected);
}

bool zero_ideal_primitive(const BratteliDiagram& d) {
  const StablePart sp = stable_part(d);
  for (const BoolMatrix& power : boolean_powers(support(sp.t.matrix()))) {
    for (Eigen::Index target = 0; target < power.rows(); ++target) {
      if (power.row(target).all()) return true;
    }
  }
  return false;
}

PrimSpectrum prim_poset(const BratteliDiagram& d) {
  const StablePart sp = stable_part(d);
  std::vector<IdealSubdiagram> primitive;
  for (auto& ideal : ideal_subdiagrams(d)) {
    if (primitive_on(sp, ideal.selected)) primitive.push_back(std::move(ideal));
  }
  if (primitive.empty()) throw DomainError("diagram has no primitive ideals");

  // census numbering of nontrivial ideals: I1, I2, ... in list order
  std::vector<std::string> labels;
  const auto all = ideal_subdiagrams(d);
  for (const auto& ideal : primitive) {
    if (ideal.is_zero()) {
      labels.emplace_back("0");
      continue;
    }
    std::size_t number = 0;
    for (const auto& other : all) {
      if (other.selected == sp.all || other.is_zero()) continue;
      ++number;
      if (other.selected == ideal.selected) break;
    }
    labels.push_back("I" + std::to_string(number));
  }
  std::vector<PointMask> below(primitive.size(), 0);
  for (std::size_t i = 0; i < primitive.size(); ++i) {
    for (std::size_t j = 0; j < primitive.size(); ++j) {
      if ((primitive[j].selected & ~primitive[i].selected) == 0) below[i] |= singleton(j);
    }
  }
  Poset poset(std::move(labels), std::move(below));
  return PrimSpectrum{std::move(primitive), std::move(poset)};
}

bool roundtrip_check(const Poset& p) {
  return is_isomorphic(prim_poset(build_diagram(p)).poset, p);
}

}  // namespace posetk

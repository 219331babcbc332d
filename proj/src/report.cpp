#include "posetk/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "posetk/io.hpp"

namespace posetk {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string node_id(std::size_t level, std::size_t index) {
  return "n" + std::to_string(level) + "_" + std::to_string(index);
}

std::string tuple_of(const std::vector<std::string>& items) {
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + ")";
}

std::string set_of(const std::vector<std::string>& items) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + "}";
}

std::string real(double x) {
  std::ostringstream out;
  out << std::setprecision(15) << x;
  return out.str();
}

std::vector<std::string> stable_members(NodeMask s, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if ((s >> i) & 1u) out.push_back(names[i]);
  }
  return out;
}

// Indices with a nonzero coefficient.
std::vector<Eigen::Index> support_of(const IntVector& form) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < form.size(); ++i) {
    if (form(i) != 0) out.push_back(i);
  }
  return out;
}

}  // namespace

std::string emit_dot(const Poset& p, const HasseDiagram& h) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (int level = 0; level < h.level_count(); ++level) {
    out << "  { rank=same;";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (h.levels[i] == level) out << ' ' << quoted(p.label(i)) << ';';
    }
    out << " }\n";
  }
  auto links = h.links;
  std::sort(links.begin(), links.end());
  for (const auto& [x, y] : links) out << "  " << quoted(p.label(x)) << " -> " << quoted(p.label(y)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string emit_dot(const BratteliDiagram& d) {
  std::ostringstream out;
  out << "digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n";
  for (std::size_t n = 0; n < d.depth(); ++n) {
    out << "  { rank=same;";
    for (std::size_t j = 0; j < d.level(n).size(); ++j) {
      out << ' ' << node_id(n, j) << " [label=" << quoted(std::to_string(d.level(n)[j].dimension));
      if (n > 0) out << ", xlabel=" << quoted(d.node_label(n, j));
      out << "];";
    }
    out << " }\n";
  }
  for (std::size_t n = 0; n < d.edge_count(); ++n) {
    const IntMatrix& e = d.edges(n);
    for (Eigen::Index j = 0; j < e.cols(); ++j) {
      for (Eigen::Index k = 0; k < e.rows(); ++k) {
        for (Integer r = 0; r < e(k, j); ++r) {
          out << "  " << node_id(n, static_cast<std::size_t>(j)) << " -> "
              << node_id(n + 1, static_cast<std::size_t>(k)) << ";\n";
        }
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string emit_dot(const PrimSpectrum& s) {
  std::string dot = emit_dot(s.poset, hasse(s.poset));
  dot.replace(0, std::string("digraph hasse").size(), "digraph prim");
  return dot;
}

std::vector<std::string> letter_names(Eigen::Index k) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (i < 26) {
      out.emplace_back(1, static_cast<char>('a' + i));
    } else {
      out.push_back("v" + std::to_string(i + 1));
    }
  }
  return out;
}

std::vector<std::string> coordinate_names(const BratteliDiagram& d) {
  if (!d.source() || !d.stable_level()) {
    const auto k = d.depth() ? d.level(d.depth() - 1).size() : 0;
    return letter_names(static_cast<Eigen::Index>(k));
  }
  std::vector<std::string> out;
  const std::size_t n = *d.stable_level();
  for (std::size_t j = 0; j < d.level(n).size(); ++j) out.push_back(d.node_label(n, j));
  return out;
}

std::string format_form(const IntVector& form, const std::vector<std::string>& names) {
  std::string out;
  for (Eigen::Index i = 0; i < form.size(); ++i) {
    const Integer c = form(i);
    if (c == 0) continue;
    const Integer a = c < 0 ? -c : c;
    if (out.empty()) {
      out += c < 0 ? "-" : "";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (a != 1) out += std::to_string(a) + "*";
    out += names[static_cast<std::size_t>(i)];
  }
  return out.empty() ? "0" : out;
}

std::string format_polynomial(const ComponentPolynomial& poly, const std::vector<std::string>& names) {
  std::string out;
  for (int j = 0; j <= poly.degree(); ++j) {
    const IntVector& f = poly.monomial[static_cast<std::size_t>(j)];
    const auto supp = support_of(f);
    if (supp.empty()) continue;
    const std::string power = j == 0 ? "" : (j == 1 ? "m" : "m^" + std::to_string(j));
    if (j == 0) {
      out = format_form(f, names);
      continue;
    }
    if (supp.size() == 1 && (f(supp[0]) == 1 || f(supp[0]) == -1)) {
      const bool negative = f(supp[0]) < 0;
      const std::string term = power + "*" + names[static_cast<std::size_t>(supp[0])];
      if (out.empty()) {
        out = (negative ? "-" : "") + term;
      } else {
        out += (negative ? " - " : " + ") + term;
      }
    } else {
      const std::string term = power + "*(" + format_form(f, names) + ")";
      out += out.empty() ? term : " + " + term;
    }
  }
  if (out.empty()) return "0";
  if (poly.denominator != 1) out = "(" + out + ")/" + std::to_string(poly.denominator);
  return out;
}

std::string cone_report(const ConeDescription& cone, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "kind: " << to_string(cone.kind) << '\n';
  out << "coordinates: v = " << tuple_of(names) << '\n';
  switch (cone.kind) {
    case ConeKind::unipotent_symbolic: {
      out << "nilpotency index: " << cone.nilpotency_index << '\n';
      out << "T^m v:\n";
      for (std::size_t i = 0; i < cone.components.size(); ++i) {
        out << "  " << names[i] << ": " << format_polynomial(cone.components[i], names) << '\n';
      }
      const auto criteria = cone_criteria(cone);
      // coordinates that are unconditionally nonnegative
      std::vector<bool> fixed(static_cast<std::size_t>(cone.dimension), false);
      for (const auto& crit : criteria) {
        if (crit.degree == 0 && crit.cases.size() == 1 && crit.cases[0].size() == 1) {
          const auto supp = support_of(crit.cases[0][0].form);
          if (supp.size() == 1 && supp[0] == crit.component && crit.cases[0][0].form(supp[0]) > 0) {
            fixed[static_cast<std::size_t>(crit.component)] = true;
          }
        }
      }
      auto condition_text = [&](const Condition& c) {
        const auto supp = support_of(c.form);
        const bool over_fixed =
            supp.size() > 1 && std::all_of(supp.begin(), supp.end(), [&](Eigen::Index i) {
              return c.form(i) > 0 && fixed[static_cast<std::size_t>(i)];
            });
        if (over_fixed && c.relation != Relation::nonnegative) {
          std::vector<std::string> vars, zeros;
          for (Eigen::Index i : supp) {
            vars.push_back(names[static_cast<std::size_t>(i)]);
            zeros.emplace_back("0");
          }
          return tuple_of(vars) + (c.relation == Relation::zero ? " = " : " != ") + tuple_of(zeros);
        }
        const std::string f = format_form(c.form, names);
        switch (c.relation) {
          case Relation::positive:
            return f + " > 0";
          case Relation::zero:
            return f + " = 0";
          case Relation::nonnegative:
            break;
        }
        return f + " >= 0";
      };
      out << "v in K0+ iff all of:\n";
      if (criteria.empty()) out << "  (always)\n";
      for (const auto& crit : criteria) {
        const std::string& name = names[static_cast<std::size_t>(crit.component)];
        if (crit.degree == 0) {
          out << "  " << condition_text(crit.cases[0][0]) << '\n';
          continue;
        }
        out << "  " << name << " eventually >= 0:\n";
        for (std::size_t c = 0; c < crit.cases.size(); ++c) {
          out << "    " << (c ? "or " : "   ");
          for (std::size_t k = 0; k < crit.cases[c].size(); ++k) {
            out << (k ? " and " : "") << condition_text(crit.cases[c][k]);
          }
          out << '\n';
        }
      }
      break;
    }
    case ConeKind::perron_halfspace: {
      std::vector<std::string> u;
      for (Eigen::Index i = 0; i < cone.perron_vector.size(); ++i) u.push_back(real(cone.perron_vector(i)));
      out << "perron value: " << real(cone.perron_value) << '\n';
      out << "perron vector: u = " << tuple_of(u) << '\n';
      out << "v in K0+ iff <u, v> > 0, or v = 0\n";
      out << "boundary band: |<u, v>| <= 1e-06 * |v|_1 resolved by iteration (m <= " << cone.fallback_m_max
          << ")\n";
      break;
    }
    case ConeKind::iterative_only:
      out << "v in K0+ iff T^m v >= 0 for some m; tested by iteration (m <= " << cone.fallback_m_max << ")\n";
      break;
  }
  return out.str();
}

std::string level_report(const BratteliDiagram& d) {
  std::ostringstream out;
  out << "depth: " << d.depth() << '\n';
  if (d.stable_level()) {
    out << "stable level: " << *d.stable_level() << '\n';
  } else {
    out << "stable level: not reached\n";
  }
  for (std::size_t n = 0; n < d.depth(); ++n) {
    std::vector<std::string> dims, labels;
    for (std::size_t j = 0; j < d.level(n).size(); ++j) {
      dims.push_back(std::to_string(d.level(n)[j].dimension));
      labels.push_back(n == 0 ? "P" : d.node_label(n, j));
    }
    out << "level " << n << ": dims " << tuple_of(dims) << " nodes " << tuple_of(labels) << '\n';
  }
  for (std::size_t n = 0; n < d.edge_count(); ++n) {
    out << "edges " << n << " -> " << n + 1 << ":\n" << format_matrix(d.edges(n));
  }
  if (d.stable_level()) out << "stable T:\n" << format_matrix(stable_incidence(d).matrix());
  return out.str();
}

std::string ideal_report(const BratteliDiagram& d) {
  const auto names = coordinate_names(d);
  std::ostringstream out;
  out << "stable nodes: " << tuple_of(names) << '\n';
  std::size_t number = 0;
  for (const auto& ideal : ideal_subdiagrams(d)) {
    std::string name;
    const bool whole = stable_members(ideal.selected, names).size() == names.size();
    if (ideal.is_zero()) {
      name = "0";
    } else if (whole) {
      name = "A";
    } else {
      name = "I" + std::to_string(++number);
    }
    out << "ideal " << name << ": " << set_of(stable_members(ideal.selected, names));
    if (ideal.first_level) out << " from level " << *ideal.first_level;
    out << " primitive " << (is_primitive(ideal, d) ? "yes" : "no") << '\n';
  }
  const PrimSpectrum s = prim_poset(d);
  out << "prim points: " << tuple_of(s.poset.points()) << '\n';
  const auto links = hasse(s.poset).links;
  for (const auto& [x, y] : links) out << "prim order: " << s.poset.label(x) << " <= " << s.poset.label(y) << '\n';
  return out.str();
}

std::string hasse_report(const Poset& p, const HasseDiagram& h) {
  std::ostringstream out;
  for (int level = 0; level < h.level_count(); ++level) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (h.levels[i] == level) members.push_back(p.label(i));
    }
    out << "level " << level << ": " << set_of(members) << '\n';
  }
  auto links = h.links;
  std::sort(links.begin(), links.end());
  for (const auto& [x, y] : links) out << "cover: " << p.label(x) << " < " << p.label(y) << '\n';
  return out.str();
}

}  // namespace posetk

#include "posetk/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "posetk/errors.hpp"
#include "posetk/io.hpp"
#include "posetk/isomorphism.hpp"
#include "posetk/ktheory.hpp"
#include "posetk/report.hpp"
#include "posetk/spectrum.hpp"

namespace posetk {

namespace {

using nlohmann::json;

class UsageError : public ParseError {
 public:
  using ParseError::ParseError;
};

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const IntVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json covers_json(const Poset& p) {
  auto links = hasse(p).links;
  std::sort(links.begin(), links.end());
  json out = json::array();
  for (const auto& [x, y] : links) out.push_back({p.label(x), p.label(y)});
  return out;
}

void line(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

void require_text_or_json(const RunConfig& c, const char* name) {
  if (c.format == OutputFormat::dot) throw UsageError(std::string("--format dot is not available for ") + name);
}

class Runner {
 public:
  explicit Runner(const RunConfig& c) : c_(c) {}

  void execute(std::ostream& out) {
    switch (c_.command) {
      case Command::quotient:
        return quotient(out);
      case Command::poset_check:
        return poset_check(out);
      case Command::bratteli:
        return bratteli(out);
      case Command::spectrum:
        return spectrum(out);
      case Command::k0:
        return k0(out);
      case Command::cone:
        return cone(out);
      case Command::member:
        return member(out);
      case Command::roundtrip:
        return roundtrip(out);
    }
  }

  bool failed() const { return failed_; }

 private:
  const RunConfig& c_;
  bool failed_ = false;

  PosetInput input() const {
    if (c_.input_path.empty()) throw UsageError("no input file given");
    return parse_input(read_file(c_.input_path));
  }

  Poset poset() const {
    PosetInput in = input();
    if (auto* space = std::get_if<GroundSpace>(&in)) return quotient_by_covering(*space);
    return std::get<Poset>(std::move(in));
  }

  BratteliDiagram diagram() const {
    if (c_.matrix_path) {
      const IncidenceMatrix t(parse_matrix(read_file(*c_.matrix_path)));
      return stationary_diagram(t, c_.depth.value_or(5));
    }
    return build_diagram(poset(), c_.depth);
  }

  // Stable matrix and coordinate names, from --matrix or the poset pipeline.
  std::pair<IncidenceMatrix, std::vector<std::string>> matrix() const {
    if (c_.matrix_path) {
      IncidenceMatrix t(parse_matrix(read_file(*c_.matrix_path)));
      auto names = letter_names(t.dimension());
      return {std::move(t), std::move(names)};
    }
    const BratteliDiagram d = diagram();
    return {stable_incidence(d), coordinate_names(d)};
  }

  void quotient(std::ostream& out) const {
    require_text_or_json(c_, "quotient");
    PosetInput in = input();
    std::vector<std::pair<std::string, std::vector<std::string>>> classes;
    Poset p = [&] {
      if (auto* space = std::get_if<GroundSpace>(&in)) {
        Poset q = quotient_by_covering(*space);
        for (std::size_t i = 0; i < q.size(); ++i) classes.emplace_back(q.label(i), std::vector<std::string>{});
        // members of each class: same cover membership as its label
        auto pattern = [&](const std::string& x) {
          std::vector<bool> row;
          for (const auto& set : space->cover) row.push_back(std::find(set.begin(), set.end(), x) != set.end());
          return row;
        };
        for (const auto& x : space->points) {
          for (auto& [label, members] : classes) {
            if (pattern(label) == pattern(x)) members.push_back(x);
          }
        }
        return q;
      }
      return std::get<Poset>(std::move(in));
    }();

    std::vector<std::vector<std::string>> basis;
    for (std::size_t i = 0; i < p.size(); ++i) basis.push_back(p.labels_of(p.down_set(i)));

    if (c_.format == OutputFormat::json_lines) {
      json j;
      j["points"] = p.points();
      j["order"] = covers_json(p);
      j["basis"] = basis;
      json cls = json::array();
      for (const auto& [label, members] : classes) cls.push_back({{"label", label}, {"members", members}});
      j["classes"] = cls;
      line(out, j);
      return;
    }
    out << format_poset(p);
    for (const auto& [label, members] : classes) {
      out << "# class " << label << ":";
      for (const auto& m : members) out << ' ' << m;
      out << '\n';
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      out << "# minimal open set of " << p.label(i) << ": {";
      for (std::size_t k = 0; k < basis[i].size(); ++k) out << (k ? ", " : "") << basis[i][k];
      out << "}\n";
    }
  }

  void poset_check(std::ostream& out) const {
    const Poset p = poset();
    const HasseDiagram h = hasse(p);
    if (c_.format == OutputFormat::dot) {
      out << emit_dot(p, h);
      return;
    }
    const auto closed = closed_sets(p);
    if (c_.format == OutputFormat::json_lines) {
      json levels = json::object();
      for (std::size_t i = 0; i < p.size(); ++i) levels[p.label(i)] = h.levels[i];
      json cs = json::array();
      for (PointMask s : closed) cs.push_back(p.labels_of(s));
      line(out, {{"points", p.points()}, {"levels", levels}, {"covers", covers_json(p)}, {"closed_sets", cs}});
      return;
    }
    out << format_poset(p) << hasse_report(p, h);
    out << "closed sets: " << closed.size() << '\n';
    for (std::size_t k = 0; k < closed.size(); ++k) {
      const auto labels = p.labels_of(closed[k]);
      out << "  C" << k + 1 << " = {";
      for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ", " : "") << labels[i];
      out << "}\n";
    }
  }

  void bratteli(std::ostream& out) const {
    const BratteliDiagram d = diagram();
    if (c_.format == OutputFormat::dot) {
      out << emit_dot(d);
      return;
    }
    if (c_.format == OutputFormat::json_lines) {
      for (std::size_t n = 0; n < d.depth(); ++n) {
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < d.level(n).size(); ++j) labels.push_back(n == 0 ? "P" : d.node_label(n, j));
        line(out, {{"level", n}, {"dims", d.dimensions(n)}, {"nodes", labels}});
      }
      for (std::size_t n = 0; n < d.edge_count(); ++n) line(out, {{"edges", n}, {"matrix", matrix_json(d.edges(n))}});
      json tail = {{"stable_level", nullptr}};
      if (d.stable_level()) {
        tail["stable_level"] = *d.stable_level();
        tail["T"] = matrix_json(stable_incidence(d).matrix());
      }
      line(out, tail);
      return;
    }
    out << level_report(d);
  }

  void spectrum(std::ostream& out) const {
    const BratteliDiagram d = diagram();
    if (c_.format == OutputFormat::dot) {
      out << emit_dot(prim_poset(d));
      return;
    }
    if (c_.format == OutputFormat::json_lines) {
      const auto names = coordinate_names(d);
      std::size_t number = 0;
      for (const auto& ideal : ideal_subdiagrams(d)) {
        std::vector<std::string> members;
        for (std::size_t i = 0; i < names.size(); ++i) {
          if ((ideal.selected >> i) & 1u) members.push_back(names[i]);
        }
        std::string name = ideal.is_zero() ? "0" : members.size() == names.size() ? "A" : "I" + std::to_string(++number);
        line(out, {{"ideal", name}, {"nodes", members}, {"primitive", is_primitive(ideal, d)}});
      }
      const PrimSpectrum s = prim_poset(d);
      line(out, {{"prim_points", s.poset.points()}, {"prim_order", covers_json(s.poset)}});
      return;
    }
    out << ideal_report(d);
  }

  void k0(std::ostream& out) const {
    require_text_or_json(c_, "k0");
    const auto [t, names] = matrix();
    const K0Result r = k0_group(t);
    const IntMatrix inv = integer_inverse(t);
    if (c_.format == OutputFormat::json_lines) {
      line(out, {{"K0", r.group()}, {"det", r.determinant}, {"K1", kK1Rank}, {"coordinates", names},
                 {"T", matrix_json(t.matrix())}, {"T_inverse", matrix_json(inv)}});
      return;
    }
    out << "K0 = " << r.group() << ", det(T) = " << r.determinant << '\n';
    out << "K1 = " << kK1Rank << '\n';
    out << "coordinates: (";
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
    out << ")\nT:\n" << format_matrix(t.matrix()) << "T^-1:\n" << format_matrix(inv);
  }

  void cone(std::ostream& out) const {
    require_text_or_json(c_, "cone");
    const auto [t, names] = matrix();
    const ConeDescription cone = describe_cone(t, c_.tolerance, c_.m_max);
    if (c_.format == OutputFormat::json_lines) {
      json j = {{"kind", to_string(cone.kind)}, {"coordinates", names}};
      if (cone.kind == ConeKind::unipotent_symbolic) {
        json comps = json::array();
        for (std::size_t i = 0; i < cone.components.size(); ++i) {
          comps.push_back({{"coordinate", names[i]}, {"T^m v", format_polynomial(cone.components[i], names)}});
        }
        j["nilpotency_index"] = cone.nilpotency_index;
        j["components"] = comps;
      } else if (cone.kind == ConeKind::perron_halfspace) {
        j["perron_value"] = cone.perron_value;
        j["perron_vector"] = std::vector<double>(cone.perron_vector.data(),
                                                 cone.perron_vector.data() + cone.perron_vector.size());
      }
      line(out, j);
      return;
    }
    out << cone_report(cone, names);
  }

  void member(std::ostream& out) const {
    require_text_or_json(c_, "member");
    if (c_.vectors.empty()) throw UsageError("member needs at least one --vector");
    const auto [t, names] = matrix();
    const ConeMembership test(t, c_.tolerance);
    for (const auto& text : c_.vectors) {
      const IntVector v = parse_vector(text);
      const MembershipVerdict verdict = test.test(v, c_.m_max);
      if (c_.format == OutputFormat::json_lines) {
        line(out, {{"v", vector_json(v)}, {"verdict", verdict.to_string()}});
      } else {
        out << format_vector(v) << ": " << verdict.to_string() << '\n';
      }
    }
  }

  void roundtrip(std::ostream& out) {
    require_text_or_json(c_, "roundtrip");
    const Poset p = poset();
    const PrimSpectrum s = prim_poset(build_diagram(p, c_.depth));
    const auto map = find_isomorphism(s.poset, p);
    failed_ = !map.has_value();
    if (c_.format == OutputFormat::json_lines) {
      json j = {{"roundtrip", map.has_value()}, {"points", p.size()}, {"prim_points", s.poset.points()}};
      if (map) {
        json m = json::object();
        for (std::size_t i = 0; i < map->size(); ++i) m[s.poset.label(i)] = p.label((*map)[i]);
        j["map"] = m;
      }
      line(out, j);
      return;
    }
    out << "points: " << p.size() << ", primitive ideals: " << s.poset.size() << '\n';
    if (!map) {
      out << "roundtrip: failed (Prim is not isomorphic to the input)\n";
      return;
    }
    for (std::size_t i = 0; i < map->size(); ++i) out << s.poset.label(i) << " -> " << p.label((*map)[i]) << '\n';
    out << "roundtrip: ok\n";
  }
};

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.m_max < 1) throw UsageError("--m-max must be positive");
    if (!(config.tolerance > 0)) throw UsageError("--tolerance must be positive");
    if (config.depth && *config.depth < 1) throw UsageError("--depth must be positive");
    Runner runner(config);
    std::ostringstream report;
    runner.execute(report);
    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) throw UsageError("cannot write " + *config.output);
      file << report.str();
    } else {
      out << report.str();
    }
    return runner.failed() ? 1 : 0;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Bratteli diagrams, primitive spectra and ordered K0 of finite posets"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::size_t depth = 0;
  const std::map<std::string, Command> commands{
      {"quotient", Command::quotient}, {"poset-check", Command::poset_check}, {"bratteli", Command::bratteli},
      {"spectrum", Command::spectrum}, {"k0", Command::k0},                   {"cone", Command::cone},
      {"member", Command::member},     {"roundtrip", Command::roundtrip}};
  const std::map<std::string, std::string> help{
      {"quotient", "collapse a covering to its T0 quotient and print the poset"},
      {"poset-check", "validate a poset file; print Hasse levels and closed sets"},
      {"bratteli", "build the Bratteli diagram and print levels and edges"},
      {"spectrum", "list the ideals of the diagram and the primitive spectrum"},
      {"k0", "K0 of the stable incidence matrix and its integer inverse"},
      {"cone", "describe the positive cone K0+"},
      {"member", "test vectors for membership in K0+"},
      {"roundtrip", "check that Prim of the diagram is isomorphic to the input"}};
  const std::map<std::string, OutputFormat> formats{
      {"text", OutputFormat::text}, {"dot", OutputFormat::dot}, {"json-lines", OutputFormat::json_lines}};
  std::string format = "text";

  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("input", config.input_path, "poset or covering file");
    sub->add_option("--depth", depth, "number of diagram levels")->check(CLI::PositiveNumber);
    sub->add_option("--m-max", config.m_max, "iteration bound for membership (default 64)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", config.tolerance, "power iteration tolerance (default 1e-12)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--output,-o", config.output, "write the report to this file");
    sub->add_option("--format", format, "text, dot or json-lines")->check(CLI::IsMember({"text", "dot", "json-lines"}));
    sub->add_option("--matrix", config.matrix_path, "use this k x k matrix file instead of a poset");
    if (command == Command::member) {
      sub->add_option("--vector,-v", config.vectors, "vector such as 1,-7,1 (repeatable)")->allow_extra_args(false);
    }
    sub->callback([&config, command = command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (depth > 0) config.depth = depth;
  config.format = formats.at(format);
  return run(config, std::cout, std::cerr);
}

}  // namespace posetk

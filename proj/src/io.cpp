#include "posetk/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "posetk/errors.hpp"

namespace posetk {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_identifier_char(char c) {
  return !is_space(c) && c != ',' && c != '{' && c != '}' && c != '<' && c != '=' && c != '#' &&
         c != ':';
}

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::vector<std::string> identifiers(std::string_view s, std::size_t line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_space(s[i]) || s[i] == ',') {
      ++i;
      continue;
    }
    if (!is_identifier_char(s[i])) {
      throw ParseError(where(line) + "unexpected character '" + std::string(1, s[i]) + "'");
    }
    std::size_t j = i;
    while (j < s.size() && is_identifier_char(s[j])) ++j;
    out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> braced_set(std::string_view s, std::size_t line) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    throw ParseError(where(line) + "expected a set in braces, got '" + std::string(s) + "'");
  }
  auto ids = identifiers(s.substr(1, s.size() - 2), line);
  if (ids.empty()) throw ParseError(where(line) + "empty set");
  return ids;
}

struct Document {
  std::optional<std::vector<std::string>> points;
  std::vector<std::pair<std::string, std::string>> order;
  std::vector<std::vector<std::string>> basis;
  std::vector<std::vector<std::string>> cover;
};

Document parse_document(std::string_view text) {
  Document doc;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(where(line_no) + "missing ':' after keyword");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view rest = trim(line.substr(colon + 1));

    if (key == "points") {
      if (doc.points) throw ParseError(where(line_no) + "duplicate points line");
      doc.points = identifiers(rest, line_no);
      if (doc.points->empty()) throw ParseError(where(line_no) + "no points listed");
    } else if (key == "order") {
      // chains "a <= b <= c" are accepted
      std::vector<std::string> chain;
      std::string_view r = rest;
      while (true) {
        const auto le = r.find("<=");
        const auto ids = identifiers(r.substr(0, le), line_no);
        if (ids.size() != 1) throw ParseError(where(line_no) + "expected 'x <= y'");
        chain.push_back(ids.front());
        if (le == std::string_view::npos) break;
        r = r.substr(le + 2);
      }
      if (chain.size() < 2) throw ParseError(where(line_no) + "expected 'x <= y'");
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) doc.order.emplace_back(chain[i], chain[i + 1]);
    } else if (key == "basis") {
      doc.basis.push_back(braced_set(rest, line_no));
    } else if (key == "cover") {
      doc.cover.push_back(braced_set(rest, line_no));
    } else {
      throw ParseError(where(line_no) + "unknown keyword '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }
  if (!doc.points) throw ParseError("missing points line");
  const int kinds = (doc.order.empty() ? 0 : 1) + (doc.basis.empty() ? 0 : 1) + (doc.cover.empty() ? 0 : 1);
  if (kinds > 1) throw ParseError("order, basis and cover lines cannot be mixed");
  return doc;
}

Integer parse_integer(std::string_view token) {
  Integer value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("not an integer: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> tokens(std::string_view text, bool commas) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (is_space(c) || (commas && c == ',')) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j]) && text[j] != '#' && !(commas && text[j] == ',')) ++j;
    out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

PosetInput parse_input(std::string_view text) {
  Document doc = parse_document(text);
  if (!doc.cover.empty()) {
    GroundSpace space{std::move(*doc.points), std::move(doc.cover)};
    space.validate();
    return space;
  }
  if (!doc.basis.empty()) return order_from_basis(std::move(*doc.points), doc.basis);
  return Poset::from_pairs(std::move(*doc.points), doc.order);
}

Poset parse_poset(std::string_view text) {
  PosetInput in = parse_input(text);
  if (auto* space = std::get_if<GroundSpace>(&in)) return quotient_by_covering(*space);
  return std::get<Poset>(std::move(in));
}

GroundSpace parse_covering(std::string_view text) {
  PosetInput in = parse_input(text);
  if (auto* space = std::get_if<GroundSpace>(&in)) return std::move(*space);
  throw ParseError("expected cover lines");
}

std::string format_poset(const Poset& p) {
  std::ostringstream out;
  out << "points:";
  for (const auto& label : p.points()) out << ' ' << label;
  out << '\n';
  auto links = hasse(p).links;
  std::sort(links.begin(), links.end());
  for (const auto& [x, y] : links) out << "order: " << p.label(x) << " <= " << p.label(y) << '\n';
  return out.str();
}

std::string format_covering(const GroundSpace& space) {
  std::ostringstream out;
  out << "points:";
  for (const auto& label : space.points) out << ' ' << label;
  out << '\n';
  for (const auto& set : space.cover) {
    out << "cover: {";
    for (std::size_t i = 0; i < set.size(); ++i) out << (i ? ", " : "") << set[i];
    out << "}\n";
  }
  return out.str();
}

IntMatrix parse_matrix(std::string_view text) {
  const auto toks = tokens(text, false);
  if (toks.empty()) throw ParseError("empty matrix file");
  const Integer k = parse_integer(toks.front());
  if (k < 1 || k > 64) throw ParseError("matrix size must be between 1 and 64, got " + std::to_string(k));
  const auto expected = static_cast<std::size_t>(k * k);
  if (toks.size() - 1 != expected) {
    throw ParseError("expected " + std::to_string(expected) + " entries for a " + std::to_string(k) + "x" +
                     std::to_string(k) + " matrix, got " + std::to_string(toks.size() - 1));
  }
  IntMatrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = parse_integer(toks[static_cast<std::size_t>(1 + i * k + j)]);
  }
  return m;
}

std::string format_matrix(const IntMatrix& m) {
  std::size_t width = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) width = std::max(width, std::to_string(m(i, j)).size());
  }
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const std::string s = std::to_string(m(i, j));
      if (j) out << ' ';
      out << std::string(width - s.size(), ' ') << s;
    }
    out << '\n';
  }
  return out.str();
}

std::string format_matrix_file(const IntMatrix& m) { return std::to_string(m.rows()) + "\n" + format_matrix(m); }

IntVector parse_vector(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw ParseError("unbalanced parenthesis in vector '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
  }
  const auto toks = tokens(text, true);
  if (toks.empty()) throw ParseError("empty vector");
  IntVector v(static_cast<Eigen::Index>(toks.size()));
  for (std::size_t i = 0; i < toks.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_integer(toks[i]);
  return v;
}

std::string format_vector(const IntVector& v) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v(i);
  out << ')';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace posetk

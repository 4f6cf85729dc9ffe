#pragma once

// Reading and writing lattices (.lat text and JSON) and posets (.poset text).
//
// .lat format, line oriented, '#' starts a comment:
//
//   lattice div12
//   elements 1 2 3 4 6 12
//   covers 1<2 1<3 2<4 2<6 3<6 4<12 6<12
//
// `covers` may repeat across lines. Keywords accept an optional trailing ':'.
// The poset format is identical with `poset` and `relations` as keywords.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latkit/bits.hpp"
#include "latkit/error.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

enum class Format { Lat, Json };

/// Strict partial order on a small set; below[i] is the set of j with j < i.
struct PosetSpec {
  std::string name;
  std::vector<std::string> labels;
  std::vector<Mask> below;

  std::size_t size() const noexcept { return labels.size(); }
  friend bool operator==(const PosetSpec&, const PosetSpec&) = default;
};

namespace detail {

struct RelationText {
  std::string header_keyword;
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> pairs;
};

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::string strip_colon(std::string s) {
  if (!s.empty() && s.back() == ':') s.pop_back();
  return s;
}

// Parses the shared line format. `head` is "lattice" or "poset", `rel` is
// "covers" or "relations".
inline RelationText parse_relation_text(std::string_view source, std::string_view head, std::string_view rel) {
  RelationText out;
  out.header_keyword = std::string(head);
  bool have_elements = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(source)};
  std::string raw;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Syntax, "line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tokens = split_ws(raw);
    if (tokens.empty()) continue;
    const std::string keyword = strip_colon(tokens.front());
    tokens.erase(tokens.begin());
    if (keyword == head) {
      if (tokens.size() != 1) fail(std::string(head) + " expects exactly one name");
      if (!out.name.empty()) fail("duplicate " + std::string(head) + " line");
      out.name = tokens.front();
    } else if (keyword == "elements") {
      if (have_elements) fail("duplicate elements line");
      if (tokens.empty()) fail("elements line lists no elements");
      for (const auto& t : tokens) {
        if (t.find('<') != std::string::npos) fail("label '" + t + "' contains '<'");
      }
      out.elements = std::move(tokens);
      have_elements = true;
    } else if (keyword == rel) {
      if (!have_elements) fail(std::string(rel) + " before elements");
      for (const auto& t : tokens) {
        if (t == "(none)") continue;
        const auto lt = t.find('<');
        if (lt == std::string::npos || lt == 0 || lt + 1 == t.size() || t.find('<', lt + 1) != std::string::npos) {
          fail("malformed relation '" + t + "', expected x<y");
        }
        out.pairs.emplace_back(t.substr(0, lt), t.substr(lt + 1));
      }
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
  }
  if (!have_elements) throw Error(ErrorKind::Syntax, "missing elements line");
  if (out.name.empty()) out.name = "unnamed";
  return out;
}

inline Elem index_in(const std::vector<std::string>& labels, const std::string& label) {
  for (Elem i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw Error(ErrorKind::Syntax, "relation mentions undeclared element '" + label + "'");
}

inline FiniteLattice lattice_from_text(RelationText text, std::size_t cap) {
  std::vector<std::pair<Elem, Elem>> covers;
  for (const auto& [lo, hi] : text.pairs) covers.emplace_back(index_in(text.elements, lo), index_in(text.elements, hi));
  return FiniteLattice::from_covers(std::move(text.name), std::move(text.elements), covers, cap);
}

}  // namespace detail

inline FiniteLattice parse_lattice(std::string_view source, Format format, std::size_t cap = kMaxElements) {
  if (format == Format::Lat) return detail::lattice_from_text(detail::parse_relation_text(source, "lattice", "covers"), cap);

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
  detail::RelationText text;
  try {
    if (!doc.is_object()) throw Error(ErrorKind::Syntax, "lattice JSON must be an object");
    text.name = doc.value("name", std::string("unnamed"));
    text.elements = doc.at("elements").get<std::vector<std::string>>();
    for (const auto& pair : doc.value("covers", nlohmann::json::array())) {
      if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::Syntax, "each cover must be a [lo, hi] pair");
      text.pairs.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
  return detail::lattice_from_text(std::move(text), cap);
}

/// Picks the format from the file extension (.json, otherwise .lat).
inline Format format_for_path(std::string_view path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? Format::Json : Format::Lat;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline FiniteLattice load_lattice(const std::string& path, std::size_t cap = kMaxElements) {
  return parse_lattice(read_file(path), format_for_path(path), cap);
}

inline nlohmann::json lattice_to_json(const FiniteLattice& lattice) {
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& [lo, hi] : lattice.covers()) covers.push_back({lattice.label(lo), lattice.label(hi)});
  return {{"name", lattice.name()}, {"elements", lattice.labels()}, {"covers", std::move(covers)}};
}

inline std::string emit_lattice(const FiniteLattice& lattice, Format format) {
  if (format == Format::Json) return lattice_to_json(lattice).dump(2) + "\n";
  std::string out = "lattice " + lattice.name() + "\nelements";
  for (const auto& l : lattice.labels()) out += " " + l;
  out += "\ncovers";
  for (const auto& [lo, hi] : lattice.covers()) out += " " + lattice.label(lo) + "<" + lattice.label(hi);
  out += "\n";
  return out;
}

inline PosetSpec parse_poset(std::string_view source) {
  auto text = detail::parse_relation_text(source, "poset", "relations");
  const std::size_t n = text.elements.size();
  if (n > kMaxElements) throw Error(ErrorKind::TooLarge, "poset has more than 64 elements");
  {
    // Reuse lattice label validation rules: distinct and nonempty.
    std::vector<std::string> sorted = text.elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorKind::Syntax, "duplicate element label in poset");
    }
  }
  std::vector<Mask> below(n, 0);
  for (const auto& [lo, hi] : text.pairs) {
    const Elem l = detail::index_in(text.elements, lo);
    const Elem h = detail::index_in(text.elements, hi);
    if (l == h) throw Error(ErrorKind::Cycle, "relation " + lo + "<" + hi + " is reflexive");
    below[h] |= bit(l);
  }
  for (Elem k = 0; k < n; ++k) {
    for (Elem i = 0; i < n; ++i) {
      if (has(below[i], k)) below[i] |= below[k];
    }
  }
  for (Elem i = 0; i < n; ++i) {
    if (has(below[i], i)) throw Error(ErrorKind::Cycle, "relations induce a cycle through " + text.elements[i]);
  }
  return PosetSpec{std::move(text.name), std::move(text.elements), std::move(below)};
}

inline std::string emit_poset(const PosetSpec& poset) {
  std::string out = "poset " + poset.name + "\nelements";
  for (const auto& l : poset.labels) out += " " + l;
  out += "\nrelations";
  for (Elem hi = 0; hi < poset.size(); ++hi) {
    for_each_bit(poset.below[hi], [&](Elem lo) { out += " " + poset.labels[lo] + "<" + poset.labels[hi]; });
  }
  out += "\n";
  return out;
}

}  // namespace latkit

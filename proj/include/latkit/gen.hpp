#pragma once

// Named lattice generators and the exhaustive corpus of finite distributive
// lattices, built as down-set lattices of all posets up to a size cap.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/canonical.hpp"
#include "latkit/error.hpp"
#include "latkit/io.hpp"
#include "latkit/lattice.hpp"
#include "latkit/properties.hpp"

namespace latkit {

inline constexpr std::size_t kMaxPosetSize = 6;

/// Lattice of down-sets of a poset under inclusion. Elements are ordered by
/// size then lexicographic member list; a down-set is labelled by its members
/// joined with '+', the empty one by "0".
inline FiniteLattice downset_lattice(const PosetSpec& poset, std::size_t cap = kMaxElements) {
  const std::size_t n = poset.size();
  if (n >= 63) throw Error(ErrorKind::Overflow, "poset too large for down-set enumeration");
  std::vector<Mask> downsets;
  for (Mask d = 0; d < (Mask{1} << n); ++d) {
    bool closed = true;
    for_each_bit(d, [&](Elem i) { closed = closed && subset(poset.below[i], d); });
    if (closed) {
      downsets.push_back(d);
      if (downsets.size() > std::min(cap, kMaxElements)) {
        throw Error(ErrorKind::Overflow, "down-set lattice of '" + poset.name + "' exceeds " +
                                             std::to_string(std::min(cap, kMaxElements)) + " elements");
      }
    }
  }
  std::sort(downsets.begin(), downsets.end(), set_less);
  std::vector<std::string> labels;
  std::vector<Mask> order(downsets.size(), 0);
  for (std::size_t i = 0; i < downsets.size(); ++i) {
    std::string label;
    for_each_bit(downsets[i], [&](Elem e) { label += (label.empty() ? "" : "+") + poset.labels[e]; });
    labels.push_back(label.empty() ? "0" : label);
    for (std::size_t j = 0; j < downsets.size(); ++j) {
      if (subset(downsets[j], downsets[i])) order[i] |= bit(j);
    }
  }
  return FiniteLattice::from_order("downsets(" + poset.name + ")", std::move(labels), std::move(order), cap);
}

inline std::string default_poset_label(std::size_t i) {
  static constexpr std::string_view letters = "pqrsuvwxyz";
  return i < letters.size() ? std::string(1, letters[i]) : "e" + std::to_string(i);
}

namespace detail {

inline CanonicalForm poset_form(const PosetSpec& poset) {
  std::vector<Mask> rows(poset.size(), 0);
  for (Elem hi = 0; hi < poset.size(); ++hi) for_each_bit(poset.below[hi], [&](Elem lo) { rows[lo] |= bit(hi); });
  return canonical_relation(rows);
}

}  // namespace detail

/// One representative per isomorphism class of n-element posets, in a fixed
/// order. Every poset arises from a smaller one by adding a maximal element
/// above some down-set, so classes are grown one element at a time and
/// deduplicated by canonical form.
inline std::vector<PosetSpec> enumerate_posets(std::size_t n, std::size_t cap = kMaxPosetSize) {
  if (n > cap) {
    throw Error(ErrorKind::CapExceeded, "poset size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  std::vector<PosetSpec> level{PosetSpec{"P0.0", {}, {}}};
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<PosetSpec> next;
    std::set<CanonicalForm> seen;
    for (const auto& base : level) {
      const std::size_t m = base.size();
      for (Mask d = 0; d < (Mask{1} << m); ++d) {
        bool closed = true;
        for_each_bit(d, [&](Elem i) { closed = closed && subset(base.below[i], d); });
        if (!closed) continue;
        PosetSpec grown = base;
        grown.labels.push_back(default_poset_label(m));
        grown.below.push_back(d);
        if (seen.insert(detail::poset_form(grown)).second) {
          grown.name = "P" + std::to_string(size) + "." + std::to_string(next.size());
          next.push_back(std::move(grown));
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

struct CorpusEntry {
  FiniteLattice lattice;
  PosetSpec poset;
  CanonicalForm form;
  bool decomposable = false;
};

/// Down-set lattices of all posets with at most max_poset_size elements
/// (including the empty poset), deduplicated by canonical form.
inline std::vector<CorpusEntry> corpus(std::size_t max_poset_size, std::size_t cap = kMaxPosetSize,
                                       std::size_t element_cap = kMaxElements) {
  if (max_poset_size > cap) {
    throw Error(ErrorKind::CapExceeded,
                "poset size " + std::to_string(max_poset_size) + " exceeds cap " + std::to_string(cap));
  }
  std::vector<CorpusEntry> out;
  std::set<CanonicalForm> seen;
  for (std::size_t size = 0; size <= max_poset_size; ++size) {
    for (const auto& poset : enumerate_posets(size, cap)) {
      auto lattice = downset_lattice(poset, element_cap);
      auto form = canonical_form(lattice);
      if (!seen.insert(form).second) continue;
      const bool decomposable = is_decomposable(lattice).decomposable;
      out.push_back(CorpusEntry{std::move(lattice), poset, std::move(form), decomposable});
    }
  }
  return out;
}

namespace detail {

inline std::size_t parse_count(std::string_view text, std::string_view spec) {
  if (text.empty() || text.size() > 18 || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::BadSpec, "expected a number in '" + std::string(spec) + "'");
  }
  return static_cast<std::size_t>(std::stoull(std::string(text)));
}

inline FiniteLattice chain_lattice(std::size_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::BadSpec, "chain needs at least one element");
  if (n > std::min(cap, kMaxElements)) throw Error(ErrorKind::Overflow, "chain:" + std::to_string(n) + " is too large");
  std::vector<std::string> labels;
  std::vector<Mask> down;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    down.push_back(full_mask(i + 1));
  }
  return FiniteLattice::from_order("chain:" + std::to_string(n), std::move(labels), std::move(down), cap);
}

inline FiniteLattice boolean_lattice(std::size_t k, std::size_t cap) {
  if (k >= 7 || (std::size_t{1} << k) > std::min(cap, kMaxElements)) {
    throw Error(ErrorKind::Overflow, "boolean:" + std::to_string(k) + " is too large");
  }
  PosetSpec antichain{"antichain", {}, {}};
  static constexpr std::string_view letters = "abcdef";
  for (std::size_t i = 0; i < k; ++i) {
    antichain.labels.emplace_back(1, letters[i]);
    antichain.below.push_back(0);
  }
  auto l = downset_lattice(antichain, cap);
  return FiniteLattice::from_order("boolean:" + std::to_string(k), l.labels(), [&] {
    std::vector<Mask> down;
    for (Elem x = 0; x < l.size(); ++x) down.push_back(l.down(x));
    return down;
  }(), cap);
}

inline FiniteLattice divisor_lattice(std::uint64_t m, std::size_t cap) {
  if (m == 0) throw Error(ErrorKind::BadSpec, "divisor lattice needs a positive integer");
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    divisors.push_back(d);
    if (d != m / d) divisors.push_back(m / d);
  }
  std::sort(divisors.begin(), divisors.end());
  if (divisors.size() > std::min(cap, kMaxElements)) {
    throw Error(ErrorKind::Overflow, "divisor:" + std::to_string(m) + " has too many divisors");
  }
  std::vector<std::string> labels;
  std::vector<Mask> down(divisors.size(), 0);
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    labels.push_back(std::to_string(divisors[i]));
    for (std::size_t j = 0; j < divisors.size(); ++j) {
      if (divisors[i] % divisors[j] == 0) down[i] |= bit(j);
    }
  }
  return FiniteLattice::from_order("divisor:" + std::to_string(m), std::move(labels), std::move(down), cap);
}

inline FiniteLattice product_lattice(const FiniteLattice& left, const FiniteLattice& right, std::size_t cap) {
  const std::size_t n = left.size() * right.size();
  if (n > std::min(cap, kMaxElements)) throw Error(ErrorKind::Overflow, "product has " + std::to_string(n) + " elements");
  std::vector<std::string> labels;
  std::vector<Mask> down(n, 0);
  for (Elem i = 0; i < left.size(); ++i) {
    for (Elem j = 0; j < right.size(); ++j) {
      labels.push_back(left.label(i) + "." + right.label(j));
      for (Elem p = 0; p < left.size(); ++p) {
        for (Elem q = 0; q < right.size(); ++q) {
          if (left.leq(p, i) && right.leq(q, j)) down[i * right.size() + j] |= bit(p * right.size() + q);
        }
      }
    }
  }
  return FiniteLattice::from_order(left.name() + "*" + right.name(), std::move(labels), std::move(down), cap);
}

inline FiniteLattice plus_top(const FiniteLattice& base, std::size_t cap) {
  const std::size_t n = base.size() + 1;
  if (n > std::min(cap, kMaxElements)) throw Error(ErrorKind::Overflow, "plustop exceeds the element cap");
  std::vector<std::string> labels = base.labels();
  std::string top = "t";
  while (base.find(top)) top += "'";
  labels.push_back(top);
  std::vector<Mask> down;
  for (Elem x = 0; x < base.size(); ++x) down.push_back(base.down(x));
  down.push_back(full_mask(n));
  return FiniteLattice::from_order("plustop:" + base.name(), std::move(labels), std::move(down), cap);
}

}  // namespace detail

/// Builds a lattice from a generator spec:
///   chain:n  boolean:k  divisor:m  product:A*B  plustop:A  downsets:<poset file>
/// product splits at its last top-level '*', so nested products associate to
/// the left.
inline FiniteLattice gen_named(std::string_view spec, std::size_t cap = kMaxElements) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorKind::BadSpec, "generator spec '" + std::string(spec) + "' lacks ':'");
  const auto kind = spec.substr(0, colon);
  const auto arg = spec.substr(colon + 1);
  if (kind == "chain") return detail::chain_lattice(detail::parse_count(arg, spec), cap);
  if (kind == "boolean") return detail::boolean_lattice(detail::parse_count(arg, spec), cap);
  if (kind == "divisor") return detail::divisor_lattice(detail::parse_count(arg, spec), cap);
  if (kind == "plustop") return detail::plus_top(gen_named(arg, cap), cap);
  if (kind == "product") {
    const auto star = arg.rfind('*');
    if (star == std::string_view::npos) throw Error(ErrorKind::BadSpec, "product needs A*B");
    const auto left = arg.substr(0, star);
    auto left_lattice = left.find('*') == std::string_view::npos ? gen_named(left, cap)
                                                                 : gen_named("product:" + std::string(left), cap);
    return detail::product_lattice(left_lattice, gen_named(arg.substr(star + 1), cap), cap);
  }
  if (kind == "downsets") {
    if (arg.empty()) throw Error(ErrorKind::BadSpec, "downsets needs a poset file");
    std::string source;
    try {
      source = read_file(std::string(arg));
    } catch (const Error&) {
      throw Error(ErrorKind::BadSpec, "cannot read poset file '" + std::string(arg) + "'");
    }
    return downset_lattice(parse_poset(source), cap);
  }
  throw Error(ErrorKind::BadSpec, "unknown generator '" + std::string(kind) + "'");
}

}  // namespace latkit

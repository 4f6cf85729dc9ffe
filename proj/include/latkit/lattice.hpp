#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/error.hpp"

namespace latkit {

/// A finite lattice with a minimum, stored as order masks plus meet and join
/// tables. Immutable once built; every invariant is checked at construction.
class FiniteLattice {
 public:
  /// Builds from a list of declared covers (lo, hi), meaning hi covers lo.
  /// The order is the reflexive-transitive closure of the covers.
  static FiniteLattice from_covers(std::string name, std::vector<std::string> labels,
                                   const std::vector<std::pair<Elem, Elem>>& covers,
                                   std::size_t cap = kMaxElements) {
    check_size(labels.size(), cap);
    const std::size_t n = labels.size();
    std::vector<Mask> down(n);
    for (Elem x = 0; x < n; ++x) down[x] = bit(x);
    for (const auto& [lo, hi] : covers) {
      if (lo >= n || hi >= n) throw Error(ErrorKind::UnknownElement, "cover refers to a missing element");
      if (lo == hi) throw Error(ErrorKind::Cycle, "element " + labels[lo] + " covers itself");
      down[hi] |= bit(lo);
    }
    close_transitively(down);
    return FiniteLattice(std::move(name), std::move(labels), std::move(down));
  }

  /// Builds from a complete order: down[x] holds every y <= x. The relation
  /// is closed transitively before validation.
  static FiniteLattice from_order(std::string name, std::vector<std::string> labels, std::vector<Mask> down,
                                  std::size_t cap = kMaxElements) {
    check_size(labels.size(), cap);
    if (down.size() != labels.size()) throw Error(ErrorKind::BadArgument, "order rows do not match labels");
    for (Elem x = 0; x < down.size(); ++x) down[x] |= bit(x);
    close_transitively(down);
    return FiniteLattice(std::move(name), std::move(labels), std::move(down));
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Elem x) const { return labels_.at(x); }

  Elem bottom() const noexcept { return bottom_; }
  Elem top() const noexcept { return top_; }
  Mask all() const noexcept { return full_mask(size()); }
  Mask nonzero() const noexcept { return all() & ~bit(bottom_); }

  bool leq(Elem x, Elem y) const noexcept { return has(down_[y], x); }
  bool less(Elem x, Elem y) const noexcept { return x != y && leq(x, y); }
  bool comparable(Elem x, Elem y) const noexcept { return leq(x, y) || leq(y, x); }

  /// Principal down-set (x].
  Mask down(Elem x) const noexcept { return down_[x]; }
  /// Principal up-set [x).
  Mask up(Elem x) const noexcept { return up_[x]; }
  Mask lower_covers(Elem x) const noexcept { return lower_covers_[x]; }
  Mask upper_covers(Elem x) const noexcept { return upper_covers_[x]; }

  Elem meet(Elem x, Elem y) const noexcept { return meet_[x * size() + y]; }
  Elem join(Elem x, Elem y) const noexcept { return join_[x * size() + y]; }

  /// Join of a set; the empty join is the bottom.
  Elem join_of(Mask m) const noexcept {
    Elem acc = bottom_;
    for_each_bit(m, [&](Elem e) { acc = join(acc, e); });
    return acc;
  }

  /// Meet of a set; the empty meet is the top.
  Elem meet_of(Mask m) const noexcept {
    Elem acc = top_;
    for_each_bit(m, [&](Elem e) { acc = meet(acc, e); });
    return acc;
  }

  std::optional<Elem> find(std::string_view label) const {
    for (Elem x = 0; x < size(); ++x) {
      if (labels_[x] == label) return x;
    }
    return std::nullopt;
  }

  Elem element(std::string_view label) const {
    if (auto e = find(label)) return *e;
    throw Error(ErrorKind::UnknownElement, "no element named '" + std::string(label) + "'");
  }

  /// Checks that m only names elements of this carrier.
  void check_mask(Mask m) const {
    if (!subset(m, all())) throw Error(ErrorKind::UnknownElement, "set refers to elements outside the carrier");
  }

  void check_element(Elem x) const {
    if (x >= size()) throw Error(ErrorKind::UnknownElement, "element index " + std::to_string(x) + " out of range");
  }

  /// Cover pairs (lo, hi) in element order of lo, then hi.
  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem lo = 0; lo < size(); ++lo) {
      for_each_bit(upper_covers_[lo], [&](Elem hi) { out.emplace_back(lo, hi); });
    }
    return out;
  }

  /// The same lattice with elements reordered: element x of the result is
  /// element order[x] of this one.
  FiniteLattice permuted(const std::vector<Elem>& order) const {
    const std::size_t n = size();
    if (order.size() != n) throw Error(ErrorKind::BadArgument, "permutation has wrong length");
    std::vector<Elem> position(n, n);
    for (Elem i = 0; i < n; ++i) {
      if (order[i] >= n || position[order[i]] != n) throw Error(ErrorKind::BadArgument, "not a permutation");
      position[order[i]] = i;
    }
    std::vector<std::string> labels(n);
    std::vector<Mask> down(n, 0);
    for (Elem i = 0; i < n; ++i) {
      labels[i] = labels_[order[i]];
      for_each_bit(down_[order[i]], [&](Elem y) { down[i] |= bit(position[y]); });
    }
    return FiniteLattice(name_, std::move(labels), std::move(down));
  }

  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
    return a.name_ == b.name_ && a.labels_ == b.labels_ && a.down_ == b.down_;
  }

 private:
  FiniteLattice(std::string name, std::vector<std::string> labels, std::vector<Mask> down)
      : name_(std::move(name)), labels_(std::move(labels)), down_(std::move(down)) {
    validate_labels();
    const std::size_t n = labels_.size();
    for (Elem x = 0; x < n; ++x) {
      for_each_bit(down_[x] & ~bit(x), [&](Elem y) {
        if (has(down_[y], x)) {
          throw Error(ErrorKind::Cycle, "covers induce a cycle through " + labels_[x] + " and " + labels_[y]);
        }
      });
    }
    up_.assign(n, 0);
    for (Elem x = 0; x < n; ++x) for_each_bit(down_[x], [&](Elem y) { up_[y] |= bit(x); });

    const Mask everything = full_mask(n);
    bool found_bottom = false;
    for (Elem x = 0; x < n && !found_bottom; ++x) {
      if (up_[x] == everything) {
        bottom_ = x;
        found_bottom = true;
      }
    }
    if (!found_bottom) throw Error(ErrorKind::NoBottom, "lattice '" + name_ + "' has no minimum element");

    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        meet_[x * n + y] = static_cast<std::uint8_t>(extremum(down_[x] & down_[y], down_, x, y, "greatest lower bound"));
        join_[x * n + y] = static_cast<std::uint8_t>(extremum(up_[x] & up_[y], up_, x, y, "least upper bound"));
      }
    }
    top_ = join_of(everything);

    lower_covers_.assign(n, 0);
    upper_covers_.assign(n, 0);
    for (Elem x = 0; x < n; ++x) {
      const Mask strict = down_[x] & ~bit(x);
      Mask maximal = strict;
      for_each_bit(strict, [&](Elem y) { maximal &= ~(down_[y] & ~bit(y)); });
      lower_covers_[x] = maximal;
      for_each_bit(maximal, [&](Elem y) { upper_covers_[y] |= bit(x); });
    }
  }

  static void check_size(std::size_t n, std::size_t cap) {
    if (n == 0) throw Error(ErrorKind::Syntax, "a lattice needs at least one element");
    const std::size_t limit = cap < kMaxElements ? cap : kMaxElements;
    if (n > limit) {
      throw Error(ErrorKind::TooLarge,
                  std::to_string(n) + " elements exceed the supported maximum of " + std::to_string(limit));
    }
  }

  static void close_transitively(std::vector<Mask>& down) {
    const std::size_t n = down.size();
    for (Elem k = 0; k < n; ++k) {
      for (Elem i = 0; i < n; ++i) {
        if (has(down[i], k)) down[i] |= down[k];
      }
    }
  }

  void validate_labels() const {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw Error(ErrorKind::Syntax, "empty element label");
      if (!seen.insert(l).second) throw Error(ErrorKind::Syntax, "duplicate element label '" + l + "'");
    }
  }

  // The unique element of bounds whose principal set (in rel) equals bounds.
  Elem extremum(Mask bounds, const std::vector<Mask>& rel, Elem x, Elem y, const char* what) const {
    Elem found = 0;
    bool ok = false;
    for_each_bit(bounds, [&](Elem g) {
      if (!ok && rel[g] == bounds) {
        found = g;
        ok = true;
      }
    });
    if (!ok) throw NotALatticeError(labels_[x], labels_[y], what);
    return found;
  }

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Mask> down_;
  std::vector<Mask> up_;
  std::vector<Mask> lower_covers_;
  std::vector<Mask> upper_covers_;
  std::vector<std::uint8_t> meet_;
  std::vector<std::uint8_t> join_;
  Elem bottom_ = 0;
  Elem top_ = 0;
};

/// Brace-delimited label list in element order, e.g. "{0, b}".
inline std::string format_set(const FiniteLattice& lattice, Mask m) {
  std::string out = "{";
  bool first = true;
  for_each_bit(m, [&](Elem e) {
    if (!first) out += ", ";
    out += lattice.label(e);
    first = false;
  });
  out += "}";
  return out;
}

inline std::vector<std::string> label_list(const FiniteLattice& lattice, Mask m) {
  std::vector<std::string> out;
  for_each_bit(m, [&](Elem e) { out.push_back(lattice.label(e)); });
  return out;
}

}  // namespace latkit

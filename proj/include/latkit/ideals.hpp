#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/error.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

/// A subset of a lattice's carrier tied to its owning lattice. Used where
/// ideals from different lattices could meet (ideal_join).
class IdealSet {
 public:
  IdealSet(const FiniteLattice& lattice, Mask members) : lattice_(&lattice), members_(members) {
    lattice.check_mask(members);
  }

  const FiniteLattice& lattice() const noexcept { return *lattice_; }
  Mask members() const noexcept { return members_; }
  bool contains(Elem x) const noexcept { return has(members_, x); }

  friend bool operator==(const IdealSet& a, const IdealSet& b) noexcept {
    return a.lattice_ == b.lattice_ && a.members_ == b.members_;
  }

 private:
  const FiniteLattice* lattice_;
  Mask members_;
};

inline bool is_down_closed(const FiniteLattice& lattice, Mask m) {
  bool ok = true;
  for_each_bit(m, [&](Elem x) { ok = ok && subset(lattice.down(x), m); });
  return ok;
}

inline bool is_join_closed(const FiniteLattice& lattice, Mask m) {
  bool ok = true;
  for_each_bit(m, [&](Elem x) { for_each_bit(m, [&](Elem y) { ok = ok && has(m, lattice.join(x, y)); }); });
  return ok;
}

/// Nonempty (so containing the bottom), down-closed and join-closed.
inline bool is_ideal(const FiniteLattice& lattice, Mask m) {
  return subset(m, lattice.all()) && has(m, lattice.bottom()) && is_down_closed(lattice, m) && is_join_closed(lattice, m);
}

inline void require_ideal(const FiniteLattice& lattice, Mask m) {
  lattice.check_mask(m);
  if (!is_ideal(lattice, m)) throw Error(ErrorKind::NotAnIdeal, format_set(lattice, m) + " is not an ideal");
}

namespace detail {

// Enumerates the subsets of the carrier that are closed downward in `below`
// and closed under `combine`, traversing elements along a linear extension so
// each element is decided after everything beneath it. An element that is the
// combination of chosen elements beneath it is forced in; a branch where it is
// forced but some element beneath it is missing cannot extend and is dropped.
template <class Below, class Combine>
std::vector<Mask> closed_downsets(const FiniteLattice& lattice, Below below, Combine combine) {
  const std::size_t n = lattice.size();
  std::vector<Elem> order(n);
  for (Elem x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) { return count(below(a)) < count(below(b)); });

  std::vector<Mask> out;
  std::function<void(std::size_t, Mask)> visit = [&](std::size_t k, Mask chosen) {
    if (k == n) {
      if (chosen != 0) out.push_back(chosen);
      return;
    }
    const Elem x = order[k];
    const Mask strict = below(x) & ~bit(x);
    const bool closed_below = subset(strict, chosen);
    const Mask chosen_below = chosen & strict;
    const bool forced = chosen_below != 0 && combine(chosen_below) == x;
    if (forced) {
      if (closed_below) visit(k + 1, chosen | bit(x));
      return;
    }
    visit(k + 1, chosen);
    if (closed_below) visit(k + 1, chosen | bit(x));
  };
  visit(0, 0);
  return out;
}

}  // namespace detail

/// Every ideal of the lattice, sorted by size then lexicographic member list.
inline std::vector<Mask> ideal_masks(const FiniteLattice& lattice) {
  auto ideals = detail::closed_downsets(
      lattice, [&](Elem x) { return lattice.down(x); }, [&](Mask m) { return lattice.join_of(m); });
  std::sort(ideals.begin(), ideals.end(), set_less);
  return ideals;
}

/// Ide(L) with inclusion order, intersection as meet and elementwise join.
struct IdealLattice {
  const FiniteLattice* lattice = nullptr;
  std::vector<Mask> ideals;

  std::size_t size() const noexcept { return ideals.size(); }

  std::optional<std::size_t> index_of(Mask m) const {
    auto it = std::find(ideals.begin(), ideals.end(), m);
    if (it == ideals.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ideals.begin());
  }

  bool leq(std::size_t i, std::size_t j) const { return subset(ideals.at(i), ideals.at(j)); }
  std::size_t meet(std::size_t i, std::size_t j) const;
  std::size_t join(std::size_t i, std::size_t j) const;
};

inline IdealLattice enumerate_ideals(const FiniteLattice& lattice) { return IdealLattice{&lattice, ideal_masks(lattice)}; }

/// {a∨b : a∈I, b∈J}. Throws if the result fails to be an ideal, which can
/// only happen in a non-distributive lattice.
inline Mask join_ideals(const FiniteLattice& lattice, Mask first, Mask second) {
  Mask out = 0;
  for_each_bit(first, [&](Elem a) { for_each_bit(second, [&](Elem b) { out |= bit(lattice.join(a, b)); }); });
  if (out != 0 && !is_ideal(lattice, out)) {
    throw Error(ErrorKind::NotAnIdeal, "elementwise join " + format_set(lattice, out) + " is not an ideal");
  }
  return out;
}

inline IdealSet ideal_join(const IdealSet& first, const IdealSet& second) {
  if (&first.lattice() != &second.lattice()) throw Error(ErrorKind::MixedLattice, "ideals belong to different lattices");
  const auto& lattice = first.lattice();
  require_ideal(lattice, first.members());
  require_ideal(lattice, second.members());
  return IdealSet(lattice, join_ideals(lattice, first.members(), second.members()));
}

inline std::size_t IdealLattice::meet(std::size_t i, std::size_t j) const {
  return *index_of(ideals.at(i) & ideals.at(j));
}

inline std::size_t IdealLattice::join(std::size_t i, std::size_t j) const {
  return *index_of(join_ideals(*lattice, ideals.at(i), ideals.at(j)));
}

inline IdealSet principal_ideal(const FiniteLattice& lattice, Elem a) {
  lattice.check_element(a);
  return IdealSet(lattice, lattice.down(a));
}

inline bool is_prime(const FiniteLattice& lattice, Mask ideal) {
  if (ideal == lattice.all()) return false;
  const std::size_t n = lattice.size();
  for (Elem a = 0; a < n; ++a) {
    if (has(ideal, a)) continue;
    for (Elem b = a; b < n; ++b) {
      if (!has(ideal, b) && has(ideal, lattice.meet(a, b))) return false;
    }
  }
  return true;
}

/// Spe(L), in canonical ideal order.
inline std::vector<Mask> enumerate_primes(const FiniteLattice& lattice, const std::vector<Mask>& ideals) {
  std::vector<Mask> out;
  for (Mask m : ideals) {
    if (is_prime(lattice, m)) out.push_back(m);
  }
  return out;
}

inline std::vector<Mask> enumerate_primes(const FiniteLattice& lattice) {
  return enumerate_primes(lattice, ideal_masks(lattice));
}

/// Inclusion-minimal members of a family, order preserved.
inline std::vector<Mask> minimal_members(const std::vector<Mask>& family) {
  std::vector<Mask> out;
  for (Mask m : family) {
    bool minimal = true;
    for (Mask other : family) {
      if (proper_subset(other, m)) minimal = false;
    }
    if (minimal) out.push_back(m);
  }
  return out;
}

/// Inclusion-maximal members of a family, order preserved.
inline std::vector<Mask> maximal_members(const std::vector<Mask>& family) {
  std::vector<Mask> out;
  for (Mask m : family) {
    bool maximal = true;
    for (Mask other : family) {
      if (proper_subset(m, other)) maximal = false;
    }
    if (maximal) out.push_back(m);
  }
  return out;
}

/// MinSpe(L).
inline std::vector<Mask> minimal_primes(const std::vector<Mask>& primes) { return minimal_members(primes); }

inline std::vector<Mask> minimal_primes(const FiniteLattice& lattice) { return minimal_members(enumerate_primes(lattice)); }

/// Val(x): ideals maximal with respect to not containing x.
inline std::vector<Mask> values(const FiniteLattice& lattice, const std::vector<Mask>& ideals, Elem x) {
  lattice.check_element(x);
  if (x == lattice.bottom()) throw Error(ErrorKind::ZeroElement, "the bottom element has no values");
  std::vector<Mask> avoiding;
  for (Mask m : ideals) {
    if (!has(m, x)) avoiding.push_back(m);
  }
  return maximal_members(avoiding);
}

inline std::vector<Mask> values(const FiniteLattice& lattice, Elem x) { return values(lattice, ideal_masks(lattice), x); }

/// M* = ∩{I ∈ Ide(L) : I ⊃ M}.
inline Mask m_star(const FiniteLattice& lattice, const std::vector<Mask>& ideals, Mask m) {
  require_ideal(lattice, m);
  if (m == lattice.all()) throw Error(ErrorKind::FullLattice, "the whole lattice has no strict superset ideal");
  Mask out = lattice.all();
  for (Mask i : ideals) {
    if (proper_subset(m, i)) out &= i;
  }
  return out;
}

inline Mask m_star(const FiniteLattice& lattice, Mask m) { return m_star(lattice, ideal_masks(lattice), m); }

/// M is a value iff M ⊂ M*.
inline bool is_value(const FiniteLattice& lattice, const std::vector<Mask>& ideals, Mask m) {
  return proper_subset(m, m_star(lattice, ideals, m));
}

inline bool is_value(const FiniteLattice& lattice, Mask m) { return is_value(lattice, ideal_masks(lattice), m); }

struct ElementValues {
  Elem element = 0;
  std::vector<Mask> values;
  std::size_t count() const noexcept { return values.size(); }
};

struct ValueReport {
  /// One entry per nonzero element, in element order.
  std::vector<ElementValues> per_element;
  std::vector<Mask> all_values;        // V(L)
  std::vector<Mask> special_values;    // S(L)
  std::vector<Mask> essential_values;  // E(L)
  Mask specials = 0;                   // elements with exactly one value
  Mask radical = 0;                    // Rad(L) = ∩E(L)
  bool radical_of_empty_family = false;
  /// (M, M*) for each M in V(L).
  std::vector<std::pair<Mask, Mask>> m_star;

  std::size_t value_count(Elem x) const {
    for (const auto& e : per_element) {
      if (e.element == x) return e.count();
    }
    throw Error(ErrorKind::ZeroElement, "the bottom element has no values");
  }

  const std::vector<Mask>& values_of(Elem x) const {
    for (const auto& e : per_element) {
      if (e.element == x) return e.values;
    }
    throw Error(ErrorKind::ZeroElement, "the bottom element has no values");
  }
};

namespace detail {
inline void insert_sorted_unique(std::vector<Mask>& family, Mask m) {
  auto it = std::lower_bound(family.begin(), family.end(), m, set_less);
  if (it == family.end() || *it != m) family.insert(it, m);
}
}  // namespace detail

inline ValueReport value_spectrum(const FiniteLattice& lattice, const std::vector<Mask>& ideals) {
  if (lattice.size() < 2) throw Error(ErrorKind::TrivialLattice, "value spectrum needs a nonzero element");
  ValueReport report;
  for (Elem x = 0; x < lattice.size(); ++x) {
    if (x == lattice.bottom()) continue;
    ElementValues ev{x, values(lattice, ideals, x)};
    for (Mask m : ev.values) detail::insert_sorted_unique(report.all_values, m);
    if (ev.count() == 1) {
      report.specials |= bit(x);
      detail::insert_sorted_unique(report.special_values, ev.values.front());
    }
    report.per_element.push_back(std::move(ev));
  }
  for (Mask m : report.all_values) {
    const bool essential = std::any_of(report.per_element.begin(), report.per_element.end(), [&](const ElementValues& ev) {
      return std::all_of(ev.values.begin(), ev.values.end(), [&](Mask g) { return subset(g, m); });
    });
    if (essential) report.essential_values.push_back(m);
    report.m_star.emplace_back(m, m_star(lattice, ideals, m));
  }
  report.radical = lattice.all();
  for (Mask m : report.essential_values) report.radical &= m;
  report.radical_of_empty_family = report.essential_values.empty();
  return report;
}

inline ValueReport value_spectrum(const FiniteLattice& lattice) { return value_spectrum(lattice, ideal_masks(lattice)); }

/// Checks, for every proper ideal M, that the three value characterizations
/// agree: M ∈ V(L), M ⊂ M*, and M ∈ Val(x) for every x ∈ M*∖M. Returns the
/// first ideal where they disagree.
inline std::optional<Mask> find_value_characterization_mismatch(const FiniteLattice& lattice,
                                                                 const std::vector<Mask>& ideals) {
  if (lattice.size() < 2) return std::nullopt;
  const auto report = value_spectrum(lattice, ideals);
  for (Mask m : ideals) {
    if (m == lattice.all()) continue;
    const bool in_v = std::find(report.all_values.begin(), report.all_values.end(), m) != report.all_values.end();
    const Mask star = m_star(lattice, ideals, m);
    const bool strict = proper_subset(m, star);
    bool value_of_gap = strict;
    for_each_bit(star & ~m, [&](Elem x) {
      const auto& val = report.values_of(x);
      value_of_gap = value_of_gap && std::find(val.begin(), val.end(), m) != val.end();
    });
    if (in_v != strict || strict != value_of_gap) return m;
  }
  return std::nullopt;
}

}  // namespace latkit

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/error.hpp"
#include "latkit/ideals.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

/// A⊥ = {x : x∧a = 0 for all a ∈ A}. The empty set has polar L; the bottom
/// contributes nothing since x∧0 = 0.
inline Mask polar(const FiniteLattice& lattice, Mask set) {
  lattice.check_mask(set);
  Mask out = 0;
  for (Elem x = 0; x < lattice.size(); ++x) {
    bool disjoint = true;
    for_each_bit(set, [&](Elem a) { disjoint = disjoint && lattice.meet(x, a) == lattice.bottom(); });
    if (disjoint) out |= bit(x);
  }
  return out;
}

inline Mask double_polar(const FiniteLattice& lattice, Mask set) { return polar(lattice, polar(lattice, set)); }

inline Mask element_polar(const FiniteLattice& lattice, Elem a) {
  lattice.check_element(a);
  return polar(lattice, bit(a));
}

/// Whether (a] is totally ordered.
inline bool is_chain(const FiniteLattice& lattice, Mask m) {
  bool ok = true;
  for_each_bit(m, [&](Elem x) { for_each_bit(m, [&](Elem y) { ok = ok && lattice.comparable(x, y); }); });
  return ok;
}

struct AtomsAndBasics {
  Mask atoms = 0;
  Mask basic_elements = 0;
  bool is_discrete = false;
};

inline AtomsAndBasics atoms_basics(const FiniteLattice& lattice) {
  AtomsAndBasics out;
  out.atoms = lattice.upper_covers(lattice.bottom());
  for_each_bit(lattice.nonzero(), [&](Elem a) {
    if (is_chain(lattice, lattice.down(a))) out.basic_elements |= bit(a);
  });
  out.is_discrete = true;
  for_each_bit(lattice.nonzero(), [&](Elem x) { out.is_discrete = out.is_discrete && (lattice.down(x) & out.atoms) != 0; });
  return out;
}

/// Nonzero and pairwise meeting in the bottom.
inline bool is_disjoint_set(const FiniteLattice& lattice, Mask set) {
  if (has(set, lattice.bottom())) return false;
  bool ok = true;
  for_each_bit(set, [&](Elem x) {
    for_each_bit(set, [&](Elem y) { ok = ok && (x == y || lattice.meet(x, y) == lattice.bottom()); });
  });
  return ok;
}

/// No nonzero element is disjoint from every member.
inline bool is_maximal_disjoint(const FiniteLattice& lattice, Mask set) {
  return is_disjoint_set(lattice, set) && (polar(lattice, set) & lattice.nonzero()) == 0;
}

/// Greedy basis over basic elements in element order; nullopt if the greedy
/// set is not a maximal disjoint set.
inline std::optional<Mask> find_basis(const FiniteLattice& lattice) {
  if (lattice.size() < 2) throw Error(ErrorKind::TrivialLattice, "a basis needs a nonzero element");
  const auto ab = atoms_basics(lattice);
  Mask chosen = 0;
  for_each_bit(ab.basic_elements, [&](Elem b) {
    if (is_disjoint_set(lattice, chosen | bit(b))) chosen |= bit(b);
  });
  if (chosen == 0 || !is_maximal_disjoint(lattice, chosen)) return std::nullopt;
  return chosen;
}

inline bool is_unit(const FiniteLattice& lattice, Elem u) {
  lattice.check_element(u);
  if (u == lattice.bottom()) return false;
  bool ok = true;
  for_each_bit(lattice.nonzero(), [&](Elem x) { ok = ok && lattice.meet(u, x) != lattice.bottom(); });
  return ok;
}

/// I ∩ J ≠ {0} for every nonzero ideal J.
inline bool is_large(const FiniteLattice& lattice, const std::vector<Mask>& ideals, Mask ideal) {
  require_ideal(lattice, ideal);
  const Mask zero = bit(lattice.bottom());
  return std::all_of(ideals.begin(), ideals.end(), [&](Mask j) { return j == zero || (ideal & j) != zero; });
}

inline bool is_large(const FiniteLattice& lattice, Mask ideal) { return is_large(lattice, ideal_masks(lattice), ideal); }

struct PolarReport {
  std::vector<Mask> polars;          // P(L), canonical set order
  std::vector<Mask> minimal_polars;  // minimal in P(L) ∖ {{0}}
  std::vector<Mask> maximal_polars;  // maximal in P(L) ∖ {L}
  Mask atoms = 0;
  Mask basic_elements = 0;
  std::optional<Mask> basis;
  bool is_discrete = false;
};

inline std::vector<Mask> polar_family(const FiniteLattice& lattice) {
  std::vector<Mask> family;
  auto add = [&](Mask m) {
    if (std::find(family.begin(), family.end(), m) == family.end()) family.push_back(m);
  };
  add(lattice.all());
  for (Elem x = 0; x < lattice.size(); ++x) add(element_polar(lattice, x));
  // Close under pairwise intersection until stable.
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) add(family[i] & family[j]);
  }
  std::sort(family.begin(), family.end(), set_less);
  for (Mask m : family) {
    if (double_polar(lattice, m) != m) {
      throw Error(ErrorKind::NotAnIdeal, format_set(lattice, m) + " is not its own double polar");
    }
    if (!is_ideal(lattice, m)) throw Error(ErrorKind::NotAnIdeal, "polar " + format_set(lattice, m) + " is not an ideal");
  }
  return family;
}

inline PolarReport enumerate_polars(const FiniteLattice& lattice) {
  PolarReport report;
  report.polars = polar_family(lattice);
  const Mask zero = bit(lattice.bottom());
  std::vector<Mask> nonzero;
  std::vector<Mask> proper;
  for (Mask m : report.polars) {
    if (m != zero) nonzero.push_back(m);
    if (m != lattice.all()) proper.push_back(m);
  }
  report.minimal_polars = minimal_members(nonzero);
  report.maximal_polars = maximal_members(proper);
  const auto ab = atoms_basics(lattice);
  report.atoms = ab.atoms;
  report.basic_elements = ab.basic_elements;
  report.is_discrete = ab.is_discrete;
  if (lattice.size() >= 2) report.basis = find_basis(lattice);
  return report;
}

/// A filter: excludes the bottom, meet-closed, upward closed.
struct FilterSet {
  Mask members = 0;
  std::optional<Elem> principal_generator;
  friend bool operator==(const FilterSet&, const FilterSet&) = default;
};

inline bool is_filter(const FiniteLattice& lattice, Mask m) {
  if (m == 0 || has(m, lattice.bottom())) return false;
  bool ok = true;
  for_each_bit(m, [&](Elem x) {
    ok = ok && subset(lattice.up(x), m);
    for_each_bit(m, [&](Elem y) { ok = ok && has(m, lattice.meet(x, y)); });
  });
  return ok;
}

/// Every filter, found by the dual of the ideal traversal.
inline std::vector<Mask> filter_masks(const FiniteLattice& lattice) {
  auto upsets = detail::closed_downsets(
      lattice, [&](Elem x) { return lattice.up(x); }, [&](Mask m) { return lattice.meet_of(m); });
  std::vector<Mask> out;
  for (Mask m : upsets) {
    if (!has(m, lattice.bottom())) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

/// Maximal filters, each checked for a principal generator.
inline std::vector<FilterSet> enumerate_ultrafilters(const FiniteLattice& lattice) {
  if (lattice.size() < 2) throw Error(ErrorKind::TrivialLattice, "the one-element lattice has no filters");
  std::vector<FilterSet> out;
  for (Mask m : maximal_members(filter_masks(lattice))) {
    FilterSet f{m, std::nullopt};
    const Elem g = lattice.meet_of(m);
    if (has(m, g) && lattice.up(g) == m) f.principal_generator = g;
    out.push_back(f);
  }
  return out;
}

struct ProjectabilityResult {
  bool projectable = true;
  std::optional<Elem> counterexample;
};

/// L = a⊥⊥ ∨ a⊥ for every a, with the elementwise ideal join.
inline ProjectabilityResult is_projectable(const FiniteLattice& lattice) {
  for (Elem a = 0; a < lattice.size(); ++a) {
    const Mask perp = element_polar(lattice, a);
    if (join_ideals(lattice, polar(lattice, perp), perp) != lattice.all()) return {false, a};
  }
  return {};
}

}  // namespace latkit

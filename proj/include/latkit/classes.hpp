#pragma once

// Definitional membership tests for the lattice classes. Nothing here uses a
// theorem as a shortcut; the audit module compares these definitions against
// the characterizations the theorems claim.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/error.hpp"
#include "latkit/ideals.hpp"
#include "latkit/lattice.hpp"
#include "latkit/polars.hpp"
#include "latkit/properties.hpp"

namespace latkit {

struct ClassVerdict {
  bool member = false;
  /// The outcome is forced by the carrier being finite.
  bool finite_degenerate = false;
  std::string evidence;
};

struct BnVerdict {
  bool member = true;
  std::size_t most_minimal_primes = 0;
  std::optional<Mask> witness_prime;
};

struct ConsistencyResult {
  bool consistent = true;
  /// First (x, y) with 0 < x <= y and v(x) > v(y).
  std::optional<std::array<Elem, 2>> counterexample;
};

struct ClassReport {
  /// The one-element lattice: every class holds vacuously.
  bool vacuous = false;

  bool a = false;  // every prime is minimal
  std::optional<Mask> non_minimal_prime;

  BnVerdict b;  // B = B_1
  std::size_t minimal_prime_count = 0;
  bool b_omega = false;

  ClassVerdict c;
  ClassVerdict c_omega;
  ClassVerdict d;
  ClassVerdict e;
  ClassVerdict f;
  ClassVerdict f_v;
  ClassVerdict s;
  ClassVerdict s_omega;
  std::optional<Mask> basis;

  bool t = false;
  std::optional<Elem> non_projectable;

  ConsistencyResult consistency;

  /// B_n for the recorded maximum: member iff most_minimal_primes <= n.
  bool in_bn(std::size_t n) const {
    if (n == 0) throw Error(ErrorKind::BadArgument, "B_n needs n >= 1");
    return b.most_minimal_primes <= n;
  }
};

/// Every prime contains at most n minimal primes; the witness contains the most.
inline BnVerdict in_bn(const std::vector<Mask>& primes, const std::vector<Mask>& minimal, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadArgument, "B_n needs n >= 1");
  BnVerdict out;
  for (Mask p : primes) {
    const auto under = static_cast<std::size_t>(
        std::count_if(minimal.begin(), minimal.end(), [&](Mask m) { return subset(m, p); }));
    if (!out.witness_prime || under > out.most_minimal_primes) {
      out.most_minimal_primes = under;
      out.witness_prime = p;
    }
  }
  out.member = out.most_minimal_primes <= n;
  return out;
}

inline BnVerdict in_bn(const FiniteLattice& lattice, std::size_t n) {
  const auto primes = enumerate_primes(lattice);
  return in_bn(primes, minimal_primes(primes), n);
}

inline ConsistencyResult is_consistent(const FiniteLattice& lattice, const ValueReport& values) {
  for (const auto& ex : values.per_element) {
    for (const auto& ey : values.per_element) {
      if (lattice.leq(ex.element, ey.element) && ex.count() > ey.count()) {
        return {false, std::array<Elem, 2>{ex.element, ey.element}};
      }
    }
  }
  return {};
}

inline ConsistencyResult is_consistent(const FiniteLattice& lattice) {
  if (lattice.size() < 2) throw Error(ErrorKind::TrivialLattice, "consistency needs a nonzero element");
  return is_consistent(lattice, value_spectrum(lattice));
}

/// Whether the strict inclusion order on a finite family has no infinite
/// descending chain, by peeling minimal members layer by layer. Returns the
/// number of layers (the longest strictly descending chain) on success.
inline std::optional<std::size_t> descending_chain_condition(const std::vector<Mask>& family) {
  std::vector<Mask> rest = family;
  std::size_t layers = 0;
  while (!rest.empty()) {
    std::vector<Mask> remaining;
    for (Mask m : rest) {
      const bool has_smaller = std::any_of(rest.begin(), rest.end(), [&](Mask o) { return proper_subset(o, m); });
      if (has_smaller) remaining.push_back(m);
    }
    if (remaining.size() == rest.size()) return std::nullopt;
    rest = std::move(remaining);
    ++layers;
  }
  return layers;
}

/// Largest family of pairwise disjoint nonzero elements below `bound`.
inline Mask largest_disjoint_below(const FiniteLattice& lattice, Elem bound) {
  const Mask candidates = lattice.down(bound) & lattice.nonzero();
  Mask best = 0;
  // Bron-Kerbosch style growth; disjoint sets here are small.
  auto grow = [&](auto&& self, Mask chosen, Mask allowed) -> void {
    if (count(chosen) + count(allowed) <= count(best)) return;
    if (allowed == 0) {
      best = chosen;
      return;
    }
    const Elem x = lowest(allowed);
    Mask compatible = 0;
    for_each_bit(allowed & ~bit(x), [&](Elem y) {
      if (lattice.meet(x, y) == lattice.bottom()) compatible |= bit(y);
    });
    self(self, chosen | bit(x), compatible);
    self(self, chosen, allowed & ~bit(x));
  };
  grow(grow, 0, candidates);
  return best;
}

inline ClassReport classify(const FiniteLattice& lattice) {
  const auto decomposition = is_decomposable(lattice);
  if (!decomposition.decomposable) {
    throw Error(ErrorKind::NotDecomposable, "lattice '" + lattice.name() + "' is not decomposable: " + decomposition.reason);
  }
  ClassReport report;
  if (lattice.size() == 1) {
    report.vacuous = true;
    report.a = report.b_omega = report.t = true;
    for (auto* v : {&report.c, &report.c_omega, &report.d, &report.e, &report.f, &report.f_v, &report.s, &report.s_omega}) {
      *v = ClassVerdict{true, true, "one-element lattice"};
    }
    return report;
  }

  const auto ideals = ideal_masks(lattice);
  const auto primes = enumerate_primes(lattice, ideals);
  const auto minimal = minimal_primes(primes);
  const auto values = value_spectrum(lattice, ideals);

  report.a = true;
  for (Mask p : primes) {
    if (std::find(minimal.begin(), minimal.end(), p) == minimal.end()) {
      report.a = false;
      report.non_minimal_prime = p;
      break;
    }
  }

  report.b = in_bn(primes, minimal, 1);
  report.minimal_prime_count = minimal.size();
  report.b_omega = in_bn(primes, minimal, std::max<std::size_t>(minimal.size(), 1)).member;

  // Every family of elements is finite here, so a family with meet 0 is its
  // own finite subfamily with meet 0.
  report.c = {lattice.meet_of(lattice.all()) == lattice.bottom(), true,
              "every family is finite; meet of the carrier is " + lattice.label(lattice.meet_of(lattice.all()))};
  report.c_omega = {report.c.member, true, "countable families of a finite carrier repeat finitely many elements"};

  const auto ideal_dcc = descending_chain_condition(ideals);
  report.d = {ideal_dcc.has_value(), true,
              ideal_dcc ? "Ide(L) has " + std::to_string(ideals.size()) + " members, longest chain " +
                              std::to_string(*ideal_dcc)
                        : "Ide(L) has an infinite descending chain"};
  const auto value_dcc = descending_chain_condition(values.all_values);
  report.e = {value_dcc.has_value(), true,
              value_dcc ? "V(L) has " + std::to_string(values.all_values.size()) + " members, longest chain " +
                              std::to_string(*value_dcc)
                        : "V(L) has an infinite descending chain"};

  const Mask disjoint = largest_disjoint_below(lattice, lattice.top());
  report.f = {true, true, "largest disjoint set below the top has " + std::to_string(count(disjoint)) + " members"};

  std::size_t most_values = 0;
  for (const auto& ev : values.per_element) most_values = std::max(most_values, ev.count());
  report.f_v = {true, true, "most values of one element: " + std::to_string(most_values)};

  report.basis = find_basis(lattice);
  report.s = {report.basis.has_value(), true,
              report.basis ? "basis " + format_set(lattice, *report.basis) : "no basis found"};
  report.s_omega = {report.basis.has_value(), true,
                    report.basis ? "basis has " + std::to_string(count(*report.basis)) + " members" : "no basis found"};

  const auto projectable = is_projectable(lattice);
  report.t = projectable.projectable;
  report.non_projectable = projectable.counterexample;

  report.consistency = is_consistent(lattice, values);
  return report;
}

}  // namespace latkit

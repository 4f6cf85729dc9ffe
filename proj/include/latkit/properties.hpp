#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

struct DistributivityResult {
  bool distributive = true;
  /// First (a, b, c) in element order with a∧(b∨c) != (a∧b)∨(a∧c).
  std::optional<std::array<Elem, 3>> counterexample;
};

/// Checks a∧(b∨c) = (a∧b)∨(a∧c) over all triples, a outermost.
inline DistributivityResult is_distributive(const FiniteLattice& lattice) {
  const std::size_t n = lattice.size();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (lattice.meet(a, lattice.join(b, c)) != lattice.join(lattice.meet(a, b), lattice.meet(a, c))) {
          return {false, std::array<Elem, 3>{a, b, c}};
        }
      }
    }
  }
  return {};
}

/// The dual identity a∨(b∧c) = (a∨b)∧(a∨c). Equivalent to is_distributive on
/// any lattice; kept as an independent self-check.
inline DistributivityResult is_distributive_dual(const FiniteLattice& lattice) {
  const std::size_t n = lattice.size();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (lattice.join(a, lattice.meet(b, c)) != lattice.meet(lattice.join(a, b), lattice.join(a, c))) {
          return {false, std::array<Elem, 3>{a, b, c}};
        }
      }
    }
  }
  return {};
}

/// Elements abar, bbar splitting an incomparable pair (a, b):
/// a = abar ∨ (a∧b), b = bbar ∨ (a∧b), abar ∧ bbar = 0.
struct DecompositionWitness {
  Elem a = 0;
  Elem b = 0;
  Elem abar = 0;
  Elem bbar = 0;
  friend bool operator==(const DecompositionWitness&, const DecompositionWitness&) = default;
};

struct DecomposabilityResult {
  bool decomposable = false;
  bool distributive = false;
  std::string reason;
  /// One witness per incomparable pair (a, b) with a < b in element order.
  std::vector<DecompositionWitness> witnesses;
  /// First incomparable pair with no witness.
  std::optional<std::array<Elem, 2>> counterexample;
  std::optional<std::array<Elem, 3>> distributivity_counterexample;
};

/// Lexicographically least (abar, bbar) for the pair, if any.
inline std::optional<DecompositionWitness> find_decomposition(const FiniteLattice& lattice, Elem a, Elem b) {
  const Elem m = lattice.meet(a, b);
  // abar must lie below a, bbar below b.
  std::optional<DecompositionWitness> found;
  for_each_bit(lattice.down(a), [&](Elem abar) {
    if (found || lattice.join(abar, m) != a) return;
    for_each_bit(lattice.down(b), [&](Elem bbar) {
      if (found || lattice.join(bbar, m) != b) return;
      if (lattice.meet(abar, bbar) == lattice.bottom()) found = DecompositionWitness{a, b, abar, bbar};
    });
  });
  return found;
}

inline DecomposabilityResult is_decomposable(const FiniteLattice& lattice) {
  DecomposabilityResult result;
  const auto dist = is_distributive(lattice);
  result.distributive = dist.distributive;
  if (!dist.distributive) {
    result.reason = "not distributive";
    result.distributivity_counterexample = dist.counterexample;
    return result;
  }
  const std::size_t n = lattice.size();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a + 1; b < n; ++b) {
      if (lattice.comparable(a, b)) continue;
      if (auto w = find_decomposition(lattice, a, b)) {
        result.witnesses.push_back(*w);
      } else {
        result.reason = "pair (" + lattice.label(a) + ", " + lattice.label(b) + ") has no decomposition";
        result.counterexample = std::array<Elem, 2>{a, b};
        result.witnesses.clear();
        return result;
      }
    }
  }
  result.decomposable = true;
  return result;
}

/// Join-irreducible elements: nonzero with exactly one lower cover.
inline Mask join_irreducibles(const FiniteLattice& lattice) {
  Mask out = 0;
  for (Elem x = 0; x < lattice.size(); ++x) {
    if (x != lattice.bottom() && count(lattice.lower_covers(x)) == 1) out |= bit(x);
  }
  return out;
}

/// Fast structural test: distributive, and the up-set of every
/// join-irreducible within the join-irreducible poset is a chain. This is an
/// engineering conjecture for equivalence with is_decomposable; the test
/// suite cross-validates the two on the whole corpus.
inline bool is_decomposable_fast(const FiniteLattice& lattice) {
  if (!is_distributive(lattice).distributive) return false;
  const Mask ji = join_irreducibles(lattice);
  bool ok = true;
  for_each_bit(ji, [&](Elem j) {
    const Mask above = lattice.up(j) & ji;
    for_each_bit(above, [&](Elem x) {
      for_each_bit(above, [&](Elem y) {
        if (!lattice.comparable(x, y)) ok = false;
      });
    });
  });
  return ok;
}

}  // namespace latkit

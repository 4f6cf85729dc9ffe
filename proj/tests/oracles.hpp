#pragma once

// Brute-force reference computations used only by tests. They work from
// definitions over raw subsets and never call the library's enumerators.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "latkit/lattice.hpp"

namespace oracle {

using latkit::Elem;
using latkit::FiniteLattice;
using latkit::Mask;

inline bool down_closed(const FiniteLattice& l, Mask m) {
  for (Elem x = 0; x < l.size(); ++x) {
    if (!((m >> x) & 1)) continue;
    for (Elem y = 0; y < l.size(); ++y) {
      if (l.leq(y, x) && !((m >> y) & 1)) return false;
    }
  }
  return true;
}

inline bool join_closed(const FiniteLattice& l, Mask m) {
  for (Elem x = 0; x < l.size(); ++x) {
    for (Elem y = 0; y < l.size(); ++y) {
      if (((m >> x) & 1) && ((m >> y) & 1) && !((m >> l.join(x, y)) & 1)) return false;
    }
  }
  return true;
}

/// Every subset of the carrier that is a nonempty join-closed down-set.
/// Only for carriers up to about 20 elements.
inline std::vector<Mask> ideals_by_subsets(const FiniteLattice& l) {
  std::vector<Mask> out;
  const Mask limit = Mask{1} << l.size();
  for (Mask m = 1; m < limit; ++m) {
    if (down_closed(l, m) && join_closed(l, m)) out.push_back(m);
  }
  return out;
}

/// In a finite lattice every ideal is generated by the join of its members.
inline std::vector<Mask> ideals_by_principals(const FiniteLattice& l) {
  std::vector<Mask> out;
  for (Elem x = 0; x < l.size(); ++x) {
    Mask m = 0;
    for (Elem y = 0; y < l.size(); ++y) {
      if (l.leq(y, x)) m |= Mask{1} << y;
    }
    out.push_back(m);
  }
  return out;
}

inline std::vector<Mask> primes(const FiniteLattice& l, const std::vector<Mask>& ideals) {
  std::vector<Mask> out;
  const Mask all = latkit::full_mask(l.size());
  for (Mask p : ideals) {
    if (p == all) continue;
    bool prime = true;
    for (Elem x = 0; x < l.size() && prime; ++x) {
      for (Elem y = 0; y < l.size() && prime; ++y) {
        if (((p >> l.meet(x, y)) & 1) && !((p >> x) & 1) && !((p >> y) & 1)) prime = false;
      }
    }
    if (prime) out.push_back(p);
  }
  return out;
}

inline std::vector<Mask> minimal(const std::vector<Mask>& family) {
  std::vector<Mask> out;
  for (Mask m : family) {
    bool min = true;
    for (Mask o : family) {
      if (o != m && (o & ~m) == 0) min = false;
    }
    if (min) out.push_back(m);
  }
  return out;
}

/// Ideals maximal among those not containing x.
inline std::vector<Mask> values(const std::vector<Mask>& ideals, Elem x) {
  std::vector<Mask> free;
  for (Mask i : ideals) {
    if (!((i >> x) & 1)) free.push_back(i);
  }
  std::vector<Mask> out;
  for (Mask m : free) {
    bool max = true;
    for (Mask o : free) {
      if (o != m && (m & ~o) == 0) max = false;
    }
    if (max) out.push_back(m);
  }
  return out;
}

inline Mask polar(const FiniteLattice& l, Mask a) {
  Mask out = 0;
  for (Elem x = 0; x < l.size(); ++x) {
    bool ok = true;
    for (Elem y = 0; y < l.size(); ++y) {
      if (((a >> y) & 1) && l.meet(x, y) != l.bottom()) ok = false;
    }
    if (ok) out |= Mask{1} << x;
  }
  return out;
}

/// {a∨b : a∈I, b∈J}.
inline Mask elementwise_join(const FiniteLattice& l, Mask i, Mask j) {
  Mask out = 0;
  for (Elem x = 0; x < l.size(); ++x) {
    for (Elem y = 0; y < l.size(); ++y) {
      if (((i >> x) & 1) && ((j >> y) & 1)) out |= Mask{1} << l.join(x, y);
    }
  }
  return out;
}

/// Number of unlabelled posets on n points: every strict order relation on
/// labelled points, reduced to the lexicographically least image over all
/// permutations.
inline std::size_t count_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) pairs.push_back({i, j});
    }
  }
  std::vector<std::size_t> perm(n);
  std::set<std::uint64_t> classes;
  const std::uint64_t limit = std::uint64_t{1} << pairs.size();
  for (std::uint64_t rel = 0; rel < limit; ++rel) {
    std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((rel >> k) & 1) lt[pairs[k].first][pairs[k].second] = true;
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (lt[i][j] && lt[j][i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k) {
          if (lt[i][j] && lt[j][k] && !lt[i][k]) ok = false;
        }
      }
    }
    if (!ok) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          code = (code << 1) | (lt[perm[i]][perm[j]] ? 1 : 0);
        }
      }
      best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    classes.insert(best);
  }
  return classes.size();
}

/// Whether two lattices are isomorphic, by trying every bijection that maps
/// bottom to bottom. Small carriers only.
inline bool isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  if (a.size() != b.size()) return false;
  std::vector<Elem> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (Elem x = 0; x < a.size() && ok; ++x) {
      for (Elem y = 0; y < a.size() && ok; ++y) ok = a.leq(x, y) == b.leq(perm[x], perm[y]);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace oracle

#pragma once

// Canonical forms for small binary relations by individualization and
// refinement. Two relations get the same form iff they are isomorphic.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

using CanonicalForm = std::vector<std::uint8_t>;

namespace detail {

class Canonicalizer {
 public:
  // rows[i] has bit j set iff i R j.
  explicit Canonicalizer(std::span<const Mask> rows) : n_(rows.size()), rows_(rows.begin(), rows.end()), cols_(n_, 0) {
    for (Elem i = 0; i < n_; ++i) for_each_bit(rows_[i], [&](Elem j) { cols_[j] |= bit(i); });
  }

  CanonicalForm run() {
    std::vector<std::size_t> colors(n_, 0);
    search(refine(std::move(colors)));
    return best_;
  }

  const std::vector<Elem>& best_order() const noexcept { return best_order_; }

 private:
  using Signature = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;

  // Refines an ordered partition until stable. Colors are dense ranks and the
  // relative order of existing cells is preserved.
  std::vector<std::size_t> refine(std::vector<std::size_t> colors) const {
    std::size_t cells = distinct(colors);
    while (true) {
      std::vector<std::pair<Signature, Elem>> sigs;
      sigs.reserve(n_);
      for (Elem x = 0; x < n_; ++x) {
        std::vector<std::size_t> out_colors;
        std::vector<std::size_t> in_colors;
        for_each_bit(rows_[x], [&](Elem y) { out_colors.push_back(colors[y]); });
        for_each_bit(cols_[x], [&](Elem y) { in_colors.push_back(colors[y]); });
        std::sort(out_colors.begin(), out_colors.end());
        std::sort(in_colors.begin(), in_colors.end());
        sigs.emplace_back(Signature{colors[x], std::move(out_colors), std::move(in_colors)}, x);
      }
      std::sort(sigs.begin(), sigs.end());
      std::vector<std::size_t> next(n_, 0);
      std::size_t rank = 0;
      for (std::size_t i = 0; i < sigs.size(); ++i) {
        if (i > 0 && sigs[i].first != sigs[i - 1].first) ++rank;
        next[sigs[i].second] = rank;
      }
      const std::size_t next_cells = n_ == 0 ? 0 : rank + 1;
      colors = std::move(next);
      if (next_cells == cells) return colors;
      cells = next_cells;
    }
  }

  static std::size_t distinct(const std::vector<std::size_t>& colors) {
    std::vector<std::size_t> c = colors;
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }

  void search(const std::vector<std::size_t>& colors) {
    std::vector<std::size_t> sizes(n_, 0);
    for (auto c : colors) ++sizes[c];
    std::size_t target = n_;
    for (std::size_t c = 0; c < n_; ++c) {
      if (sizes[c] > 1 && (target == n_ || sizes[c] < sizes[target])) target = c;
    }
    if (target == n_) {
      leaf(colors);
      return;
    }
    for (Elem x = 0; x < n_; ++x) {
      if (colors[x] != target) continue;
      std::vector<std::size_t> split(n_);
      for (Elem y = 0; y < n_; ++y) split[y] = 2 * colors[y] + ((colors[y] == target && y != x) ? 1 : 0);
      search(refine(std::move(split)));
    }
  }

  void leaf(const std::vector<std::size_t>& colors) {
    std::vector<Elem> order(n_);
    for (Elem x = 0; x < n_; ++x) order[colors[x]] = x;
    CanonicalForm form;
    form.reserve(1 + (n_ * n_ + 7) / 8);
    form.push_back(static_cast<std::uint8_t>(n_));
    std::uint8_t acc = 0;
    std::size_t filled = 0;
    for (Elem i = 0; i < n_; ++i) {
      for (Elem j = 0; j < n_; ++j) {
        acc = static_cast<std::uint8_t>((acc << 1) | (has(rows_[order[i]], order[j]) ? 1 : 0));
        if (++filled == 8) {
          form.push_back(acc);
          acc = 0;
          filled = 0;
        }
      }
    }
    if (filled != 0) form.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
    if (best_.empty() || form < best_) {
      best_ = std::move(form);
      best_order_ = std::move(order);
    }
  }

  std::size_t n_;
  std::vector<Mask> rows_;
  std::vector<Mask> cols_;
  CanonicalForm best_;
  std::vector<Elem> best_order_;
};

}  // namespace detail

/// Canonical form of a relation given as rows (rows[i] bit j: i R j).
inline CanonicalForm canonical_relation(std::span<const Mask> rows) {
  return detail::Canonicalizer(rows).run();
}

/// Canonical byte sequence of a lattice's order relation. Equal iff the two
/// lattices are order-isomorphic.
inline CanonicalForm canonical_form(const FiniteLattice& lattice) {
  std::vector<Mask> rows(lattice.size());
  for (Elem x = 0; x < lattice.size(); ++x) rows[x] = lattice.up(x);
  return canonical_relation(rows);
}

/// Element order realizing the canonical form: position i holds the element
/// placed i-th.
inline std::vector<Elem> canonical_order(const FiniteLattice& lattice) {
  std::vector<Mask> rows(lattice.size());
  for (Elem x = 0; x < lattice.size(); ++x) rows[x] = lattice.up(x);
  detail::Canonicalizer c(rows);
  c.run();
  return c.best_order();
}

inline std::string to_hex(const CanonicalForm& form) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(form.size() * 2);
  for (auto byte : form) {
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0x0f]);
  }
  return out;
}

}  // namespace latkit

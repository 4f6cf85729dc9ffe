#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace latkit {

/// Element index into a carrier. Declaration order is the element order.
using Elem = std::size_t;

/// A subset of a carrier of at most 64 elements, bit i = element i.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxElements = 64;

constexpr Mask bit(Elem e) noexcept { return Mask{1} << e; }

constexpr bool has(Mask m, Elem e) noexcept { return (m >> e) & 1U; }

constexpr std::size_t count(Mask m) noexcept { return static_cast<std::size_t>(std::popcount(m)); }

constexpr Mask full_mask(std::size_t n) noexcept { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

constexpr bool subset(Mask a, Mask b) noexcept { return (a & ~b) == 0; }

constexpr bool proper_subset(Mask a, Mask b) noexcept { return subset(a, b) && a != b; }

constexpr Elem lowest(Mask m) noexcept { return static_cast<Elem>(std::countr_zero(m)); }

/// Calls f(e) for every member of m in increasing element order.
template <class F>
constexpr void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    f(lowest(m));
    m &= m - 1;
  }
}

inline std::vector<Elem> members(Mask m) {
  std::vector<Elem> out;
  out.reserve(count(m));
  for_each_bit(m, [&](Elem e) { out.push_back(e); });
  return out;
}

/// Canonical order on element sets: smaller sets first, then lexicographic on
/// the sorted member list.
constexpr bool set_less(Mask a, Mask b) noexcept {
  const auto ca = count(a);
  const auto cb = count(b);
  if (ca != cb) return ca < cb;
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

}  // namespace latkit

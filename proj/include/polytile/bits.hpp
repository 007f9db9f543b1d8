#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace polytile {

/// Subset of a ground set of at most 32 labels, indexed in declared order.
using Mask = std::uint32_t;

constexpr Mask full_mask(std::size_t h) {
  return h >= 32 ? ~Mask{0} : (Mask{1} << h) - 1;
}

constexpr bool has_bit(Mask m, std::size_t i) { return (m >> i) & 1U; }

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

inline int popcount(Mask m) { return std::popcount(m); }

inline std::vector<std::size_t> mask_elements(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

inline Mask mask_of(const std::vector<std::size_t>& elems) {
  Mask m = 0;
  for (auto e : elems) m |= bit(e);
  return m;
}

}  // namespace polytile

#pragma once

// Test-side reference computations, written from the defining relations
// and independent of the library's closed forms.

#include "elkik/ring.hpp"

#include <cstdint>
#include <optional>

namespace ref {

using elkik::RBasisIndex;

/// Product of two basis vectors of R by rewriting one relation at a time:
/// x_i y -> x_(i-1), x_0 y -> 0, and x_i = x_(i+1) y to expose x_j y.
inline std::optional<RBasisIndex> rewrite_product(RBasisIndex a, RBasisIndex b) {
  if (a.is_x() && b.is_y())
    std::swap(a, b);
  if (a.is_y() && b.is_y())
    return RBasisIndex::y(a.n + b.n);
  if (a.is_y()) {
    auto i = static_cast<long>(b.n);
    for (std::uint32_t step = 0; step < a.n; ++step) {
      if (i == 0)
        return std::nullopt; // x_0 y = 0
      --i;                   // x_i y = x_(i-1)
    }
    return RBasisIndex::x(static_cast<std::uint32_t>(i));
  }
  // x_i x_j = (x_(i+j+1) y^(j+1)) x_j and y^(j+1) x_j reaches x_0 y = 0.
  const auto inner = rewrite_product(RBasisIndex::y(b.n + 1), b);
  if (!inner)
    return std::nullopt;
  return rewrite_product(RBasisIndex::x(a.n + b.n + 1), *inner);
}

/// x_j t^d vanishes in R[t]/(x_k t^(m+k)) iff some rewrite x_j = y^b x_(j+b)
/// exposes a generator x_(j+b) t^(m+j+b) dividing t^d.
inline bool e1_kills(std::uint32_t m, std::uint32_t j, std::uint32_t d,
                     std::uint32_t search = 64) {
  for (std::uint32_t b = 0; b <= search; ++b)
    if (d >= m + j + b)
      return true;
  return false;
}

/// Same for R[t,u]/(x_k t^(2+k), x_k t^k u).
inline bool e2_kills(std::uint32_t j, std::uint32_t dt, std::uint32_t du,
                     std::uint32_t search = 64) {
  for (std::uint32_t b = 0; b <= search; ++b) {
    if (dt >= 2 + j + b)
      return true;
    if (du >= 1 && dt >= j + b)
      return true;
  }
  return false;
}

} // namespace ref

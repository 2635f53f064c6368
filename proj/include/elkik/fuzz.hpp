#pragma once

// Random elements and a dual-implementation product check: closed-form
// multiplication against raw products reduced by the oracle.

#include "elkik/oracle.hpp"
#include "elkik/ring.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

namespace elkik::fuzz {

struct Bounds {
  std::uint32_t max_dt = 3;
  std::uint32_t max_du = 2;
  std::uint32_t max_index = 4; // y-exponent and x-index
  std::uint32_t max_terms = 3;
};

/// Up to max_terms random monomials with small nonzero coefficients.
GradedPoly random_element(const RingId &ring, std::mt19937_64 &rng,
                          const Bounds &b, const Field &field = {});

struct ProductCheck {
  std::size_t checked = 0;
  std::size_t disagreements = 0;
  std::optional<std::pair<GradedPoly, GradedPoly>> first_bad;
};

/// `count` random products; the space holds every product of two elements
/// within the bounds.
ProductCheck cross_check_products(const oracle::Presentation &pres,
                                  std::uint64_t seed, std::size_t count,
                                  const Bounds &b = {});

} // namespace elkik::fuzz

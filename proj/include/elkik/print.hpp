#pragma once

#include "elkik/ring.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace elkik {

/// "y^2*x3*t*u^2"; "1" for the empty monomial. In CTRL the y-slot is the
/// variable x and prints as "x^a".
std::string format_monomial(std::uint32_t ypow, std::int32_t xa,
                            std::int32_t xb, std::uint32_t dt,
                            std::uint32_t du, bool ctrl);

/// Joins (coefficient, monomial-text) pairs as "a - 2*b + 1/2*c"; "0" when
/// empty.
std::string join_terms(const std::vector<std::pair<Scalar, std::string>> &terms);

/// Canonical rendering: degrees (dt, du) ascending, then y-powers before
/// x-indices, each ascending.
std::string print_element(const GradedPoly &p);

} // namespace elkik

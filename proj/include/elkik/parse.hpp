#pragma once

// Surface syntax for ring elements:
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := rational | 'y' | 't' | 'u' | 'x' nat | '(' expr ')'
//   rational := nat ('/' nat)?
//
// Whitespace between tokens is ignored; there is no implicit
// multiplication, so "x0t" is rejected. In CTRL the only coefficient
// variable is a bare 'x'.

#include "elkik/print.hpp"
#include "elkik/ring.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace elkik {

struct ExprAst {
  enum class Kind { Sum, Product, Power, Rational, Y, T, U, X, CtrlX };

  Kind kind = Kind::Rational;
  std::size_t position = 0;
  std::vector<ExprAst> children;
  std::vector<bool> negated; // Sum: sign of each child
  Scalar value;              // Rational
  std::uint32_t n = 0;       // X: index, Power: exponent
};

/// Syntax only; generators are checked against a ring in evaluate().
ExprAst parse_expr(std::string_view text, bool ctrl = false);
GradedPoly evaluate(const ExprAst &ast, const RingId &ring,
                    const Field &field = {});

GradedPoly parse_element(std::string_view text, const RingId &ring,
                         const Field &field = {});

/// "R" | "GS" | "E1" | "E1[m=<nat>]" | "E2" | "CTRL".
RingId parse_ring(std::string_view text);
/// "f" or, for the E1 family, "f[n=<nat>]" with n >= m.
SystemId parse_system(std::string_view text, const RingId &ring);

} // namespace elkik

#pragma once

// Closed-form arithmetic in the coefficient ring
//   R = k[y, x0, x1, ...] / (x0*y, x0 - x1*y, x1 - x2*y, ...)
// and its graded extensions R[t], R[t]/n(m), R[t,u]/(n + n'), plus the
// control ring k[x,t]/(x*t^2).
//
// R has k-basis {y^a} u {x_i}; products follow
//   y^a * y^b = y^(a+b),   y^a * x_i = x_(i-a) (a <= i, else 0),   x_i * x_j = 0.
// A graded piece of any of the quotients is R / Ann_R(t^d u^e), and every
// such annihilator is spanned by basis vectors, so normal forms are obtained
// by deleting coefficients.

#include "elkik/scalar.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace elkik {

struct RBasisIndex {
  enum class Tag : std::uint8_t { Y = 0, X = 1 };
  Tag tag = Tag::Y;
  std::uint32_t n = 0; // y-exponent or x-index

  static constexpr RBasisIndex one() { return {Tag::Y, 0}; }
  static constexpr RBasisIndex y(std::uint32_t a) { return {Tag::Y, a}; }
  static constexpr RBasisIndex x(std::uint32_t i) { return {Tag::X, i}; }
  bool is_y() const { return tag == Tag::Y; }
  bool is_x() const { return tag == Tag::X; }

  friend auto operator<=>(const RBasisIndex &, const RBasisIndex &) = default;
};

/// Sparse k-combination of R-basis vectors; zero coefficients are never
/// stored, so equality is support equality.
class RElement {
public:
  using Support = std::map<RBasisIndex, Scalar>;

  RElement() = default;
  RElement(RBasisIndex idx, Scalar c);

  const Support &support() const { return support_; }
  bool is_zero() const { return support_.empty(); }
  Scalar coefficient(RBasisIndex idx) const;
  void add_term(RBasisIndex idx, const Scalar &c);
  void erase(RBasisIndex idx) { support_.erase(idx); }

  RElement operator-() const;
  RElement scaled(const Scalar &c) const;
  friend RElement operator+(const RElement &a, const RElement &b);
  friend RElement operator-(const RElement &a, const RElement &b);
  friend bool operator==(const RElement &a, const RElement &b) {
    return a.support_ == b.support_;
  }

private:
  Support support_;
};

/// Product in R on basis vectors; std::nullopt means zero.
std::optional<RBasisIndex> r_mul_basis(RBasisIndex a, RBasisIndex b);
RElement r_mul(const RElement &a, const RElement &b);

struct RingId {
  enum class Kind : std::uint8_t { ROnly, GS, E1, E2, CTRL };
  Kind kind = Kind::GS;
  std::uint32_t m = 2; // only meaningful for E1

  static RingId r_only() { return {Kind::ROnly, 2}; }
  static RingId gs() { return {Kind::GS, 2}; }
  static RingId e1(std::uint32_t m = 2);
  static RingId e2() { return {Kind::E2, 2}; }
  static RingId ctrl() { return {Kind::CTRL, 2}; }

  bool has_t() const { return kind != Kind::ROnly; }
  bool has_u() const { return kind == Kind::E2; }
  std::string name() const;

  friend bool operator==(const RingId &a, const RingId &b) {
    return a.kind == b.kind && (a.kind != Kind::E1 || a.m == b.m);
  }
};

/// Product of coefficients in the given ring: R for every ring but CTRL,
/// whose coefficient ring k[x] is stored on Y-tagged indices (y^a means x^a).
RElement coeff_mul(const RingId &ring, const RElement &a, const RElement &b);

/// k-basis of Ann_R(t^dt u^du). Finite for the R-based rings; CTRL kills
/// every x^a with a >= 1 once dt >= 2, recorded as `y_from`.
struct AnnihilatorBasis {
  std::vector<RBasisIndex> finite;
  std::optional<std::uint32_t> y_from;

  bool contains(RBasisIndex idx) const;
  bool empty() const { return finite.empty() && !y_from; }
  /// Explicit list with every index <= bound.
  std::vector<RBasisIndex> up_to(std::uint32_t bound) const;
};

AnnihilatorBasis ann_formula(const RingId &ring, std::uint32_t dt,
                             std::uint32_t du);

struct Degree {
  std::uint32_t dt = 0;
  std::uint32_t du = 0;

  std::uint32_t total() const { return dt + du; }
  friend auto operator<=>(const Degree &, const Degree &) = default;
};

class GradedPoly {
public:
  using Terms = std::map<Degree, RElement>;

  explicit GradedPoly(RingId ring) : ring_(ring) {}
  /// Validates the generators against the ring and reduces.
  static GradedPoly from_terms(RingId ring, Terms terms);
  static GradedPoly monomial(RingId ring, Degree deg, RBasisIndex idx,
                             Scalar c = Scalar(1));
  static GradedPoly constant(RingId ring, Scalar c);

  const RingId &ring() const { return ring_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RElement component(Degree d) const;
  /// Largest dt, du and y-exponent / x-index appearing; zero for 0.
  std::uint32_t max_dt() const;
  std::uint32_t max_du() const;
  std::uint32_t max_y() const;
  std::optional<std::uint32_t> max_x() const;
  std::optional<std::uint32_t> min_total_degree() const;

  friend bool operator==(const GradedPoly &a, const GradedPoly &b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

private:
  friend GradedPoly reduce(GradedPoly p);
  RingId ring_;
  Terms terms_;
};

/// Deletes coefficients on annihilator indices; idempotent.
GradedPoly reduce(GradedPoly p);

GradedPoly g_add(const GradedPoly &p, const GradedPoly &q);
GradedPoly g_mul(const GradedPoly &p, const GradedPoly &q);
GradedPoly g_neg(const GradedPoly &p);
inline GradedPoly operator+(const GradedPoly &p, const GradedPoly &q) {
  return g_add(p, q);
}
inline GradedPoly operator-(const GradedPoly &p, const GradedPoly &q) {
  return g_add(p, g_neg(q));
}
inline GradedPoly operator*(const GradedPoly &p, const GradedPoly &q) {
  return g_mul(p, q);
}
GradedPoly g_pow(const GradedPoly &p, std::uint32_t e);

/// Element known modulo (t,u)^precision.
class PrecisionElement {
public:
  PrecisionElement(GradedPoly body, std::uint32_t precision);

  const GradedPoly &body() const { return body_; }
  std::uint32_t precision() const { return precision_; }
  /// Zero modulo (t,u)^precision.
  bool is_zero() const { return body_.is_zero(); }

  friend PrecisionElement operator+(const PrecisionElement &a,
                                    const PrecisionElement &b);
  friend PrecisionElement operator*(const PrecisionElement &a,
                                    const PrecisionElement &b);

private:
  GradedPoly body_;
  std::uint32_t precision_;
};

/// Drops every term of total degree >= precision.
GradedPoly truncate(const GradedPoly &p, std::uint32_t precision);

/// sum_{i < N} x_i t^i, reduced, at precision N.
PrecisionElement alpha_hat(const RingId &ring, std::uint32_t N);

/// Linear system f_k = g_k * X. GS: (t - y)X. E1(m) with exponent n >= m:
/// ((t - y)X, t^n X). E2: ((t - y)X, t^2 X, u X).
struct SystemId {
  RingId ring;
  std::uint32_t n = 2;

  static SystemId for_ring(const RingId &ring, std::uint32_t n = 0);
  std::vector<GradedPoly> coefficients() const;
  std::string name() const;
};

struct Residue {
  std::string label; // "f1", "f2", ...
  PrecisionElement value;
  /// true when the product g_k * candidate is zero before truncation
  bool exact_zero;
};

/// Residues f_k(candidate). A candidate known modulo (t,u)^N gives
/// g_k * candidate modulo (t,u)^(N + d_k) where d_k is the lowest total
/// degree among the terms of g_k: d = 0 for (t - y), n for t^n, 1 for u.
std::vector<Residue> apply_system(const SystemId &system,
                                  const PrecisionElement &candidate);

} // namespace elkik

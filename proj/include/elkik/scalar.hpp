#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace elkik {

/// Exact field element. Either a reduced rational (modulus 0) or a residue
/// modulo a prime. Mixing a rational with a residue maps the rational into
/// the prime field; mixing two different primes is an error.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : value_(v) {}
  explicit Scalar(mpq_class v);
  static Scalar from_string(const std::string &text);
  static Scalar modular(const mpz_class &v, std::uint64_t prime);

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  std::uint64_t modulus() const { return modulus_; }
  const mpq_class &value() const { return value_; }

  Scalar operator-() const;
  Scalar inverse() const;

  friend Scalar operator+(const Scalar &a, const Scalar &b);
  friend Scalar operator-(const Scalar &a, const Scalar &b);
  friend Scalar operator*(const Scalar &a, const Scalar &b);
  friend Scalar operator/(const Scalar &a, const Scalar &b);
  Scalar &operator+=(const Scalar &o) { return *this = *this + o; }
  Scalar &operator-=(const Scalar &o) { return *this = *this - o; }
  Scalar &operator*=(const Scalar &o) { return *this = *this * o; }

  friend bool operator==(const Scalar &a, const Scalar &b);

  /// "3", "-1/2"; residues print as their least non-negative representative.
  std::string str() const;

private:
  Scalar to_mod(std::uint64_t p) const;
  static std::uint64_t common_modulus(const Scalar &a, const Scalar &b);

  mpq_class value_{0};
  std::uint64_t modulus_ = 0;
};

std::ostream &operator<<(std::ostream &os, const Scalar &s);

/// Coefficient field selector: the rationals or F_p.
struct Field {
  std::uint64_t prime = 0;

  bool is_rational() const { return prime == 0; }
  Scalar make(long v) const;
  std::string name() const;
  /// Throws InvalidParameter unless prime is 0 or a prime number >= 2.
  void validate() const;
};

} // namespace elkik

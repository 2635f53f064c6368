#include "elkik/scalar.hpp"

#include "elkik/errors.hpp"

namespace elkik {

Scalar::Scalar(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Scalar Scalar::from_string(const std::string &text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw InvalidParameter("not a rational literal: " + text);
  if (q.get_den() == 0)
    throw InvalidParameter("zero denominator: " + text);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::modular(const mpz_class &v, std::uint64_t prime) {
  Scalar s;
  mpz_class p(static_cast<unsigned long>(prime));
  mpz_class r = v % p;
  if (r < 0)
    r += p;
  s.value_ = mpq_class(r);
  s.modulus_ = prime;
  return s;
}

Scalar Scalar::to_mod(std::uint64_t p) const {
  if (modulus_ == p)
    return *this;
  if (modulus_ != 0)
    throw InvalidParameter("mixing scalars of different characteristic");
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class den = value_.get_den();
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
    throw InvalidParameter("denominator not invertible modulo " +
                           std::to_string(p));
  return modular(value_.get_num() * inv, p);
}

std::uint64_t Scalar::common_modulus(const Scalar &a, const Scalar &b) {
  if (a.modulus_ != 0 && b.modulus_ != 0 && a.modulus_ != b.modulus_)
    throw InvalidParameter("mixing scalars of different characteristic");
  return a.modulus_ != 0 ? a.modulus_ : b.modulus_;
}

Scalar Scalar::operator-() const {
  if (modulus_ == 0)
    return Scalar(mpq_class(-value_));
  return modular(-value_.get_num(), modulus_);
}

Scalar Scalar::inverse() const {
  if (is_zero())
    throw PreconditionError("inverse of zero");
  if (modulus_ == 0)
    return Scalar(mpq_class(1) / value_);
  mpz_class pz(static_cast<unsigned long>(modulus_));
  mpz_class inv;
  mpz_class num = value_.get_num();
  mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
  return modular(inv, modulus_);
}

Scalar operator+(const Scalar &a, const Scalar &b) {
  const auto p = Scalar::common_modulus(a, b);
  if (p == 0)
    return Scalar(mpq_class(a.value_ + b.value_));
  return Scalar::modular(a.to_mod(p).value_.get_num() +
                             b.to_mod(p).value_.get_num(),
                         p);
}

Scalar operator-(const Scalar &a, const Scalar &b) { return a + (-b); }

Scalar operator*(const Scalar &a, const Scalar &b) {
  const auto p = Scalar::common_modulus(a, b);
  if (p == 0)
    return Scalar(mpq_class(a.value_ * b.value_));
  return Scalar::modular(a.to_mod(p).value_.get_num() *
                             b.to_mod(p).value_.get_num(),
                         p);
}

Scalar operator/(const Scalar &a, const Scalar &b) { return a * b.inverse(); }

bool operator==(const Scalar &a, const Scalar &b) {
  const auto p = Scalar::common_modulus(a, b);
  if (p == 0)
    return a.value_ == b.value_;
  return a.to_mod(p).value_ == b.to_mod(p).value_;
}

std::string Scalar::str() const { return value_.get_str(10); }

std::ostream &operator<<(std::ostream &os, const Scalar &s) {
  return os << s.str();
}

Scalar Field::make(long v) const {
  if (prime == 0)
    return Scalar(v);
  return Scalar::modular(mpz_class(v), prime);
}

std::string Field::name() const {
  return prime == 0 ? "q" : "fp:" + std::to_string(prime);
}

void Field::validate() const {
  if (prime == 0)
    return;
  mpz_class p(static_cast<unsigned long>(prime));
  if (prime < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw InvalidParameter("field modulus is not prime: " +
                           std::to_string(prime));
}

} // namespace elkik

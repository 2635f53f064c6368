#include <doctest.h>

#include "elkik/errors.hpp"
#include "elkik/parse.hpp"
#include "elkik/print.hpp"

#include "generators.hpp"

using namespace elkik;

namespace {

std::string canon(const std::string &text, const RingId &ring) {
  return print_element(parse_element(text, ring));
}

std::size_t error_position(const std::string &text, const RingId &ring) {
  try {
    parse_element(text, ring);
  } catch (const ParseError &e) {
    return e.position();
  }
  FAIL("no parse error for " << text);
  return 0;
}

} // namespace

TEST_CASE("canonical forms") {
  const auto e1 = RingId::e1(2);
  CHECK(canon("x0*t^2", e1) == "0");
  CHECK(canon("1/2*y^3 + x4", RingId::r_only()) == "1/2*y^3 + x4");
  CHECK(canon("(t - y)*(x0*t)", e1) == "0");
  CHECK(canon("0", RingId::gs()) == "0");
  CHECK(canon("x3 + y", RingId::r_only()) == "y + x3");
  CHECK(canon("y^2 * x5", RingId::r_only()) == "x3");
  CHECK(canon("-t + 2*t", RingId::gs()) == "t");
  CHECK(canon("x*t^2", RingId::ctrl()) == "0");
  CHECK(canon("x^3*t + 1", RingId::ctrl()) == "1 + x^3*t");
  CHECK(canon("u*x0", RingId::e2()) == "0");
  CHECK(print_element(alpha_hat(e1, 3).body()) == "x0 + x1*t + x2*t^2");
}

TEST_CASE("coefficients in a prime field") {
  const auto p = parse_element("1/2*x1", RingId::r_only(), Field{7});
  CHECK(print_element(p) == "4*x1");
}

TEST_CASE("ring and system specifiers") {
  CHECK(parse_ring("E1[m=3]") == RingId::e1(3));
  CHECK(parse_ring("E1") == RingId::e1(2));
  CHECK(parse_ring("E2") == RingId::e2());
  CHECK(parse_ring("CTRL") == RingId::ctrl());
  CHECK_THROWS_AS(parse_ring("E1[m=1]"), InvalidParameter);
  CHECK_THROWS_AS(parse_ring("E3"), InvalidParameter);
  CHECK_THROWS_AS(parse_ring("E1[m=]"), ParseError);
  CHECK(parse_system("f[n=3]", RingId::e1(2)).n == 3);
  CHECK_THROWS_AS(parse_system("f[n=1]", RingId::e1(2)), InvalidParameter);
  CHECK_THROWS_AS(parse_system("f[n=3]", RingId::e2()), InvalidParameter);
}

TEST_CASE("syntax errors carry the offset of the offending token") {
  const auto r = RingId::r_only();
  const auto e1 = RingId::e1(2);
  CHECK(error_position("x0 + * y", r) == 5);
  CHECK(error_position("y^", r) == 2);
  CHECK(error_position("(y + x1", r) == 7);
  CHECK(error_position("1/0", r) == 2);
  CHECK(error_position("x", r) == 1);
  CHECK(error_position("y $", r) == 2);
  CHECK(error_position("", r) == 0);
  CHECK(error_position("x1 + u", e1) == 5);
  CHECK(error_position("t", r) == 0);
  CHECK(error_position("y*t", RingId::ctrl()) == 0);
  CHECK(error_position("x0", RingId::ctrl()) == 0);
  CHECK_THROWS_AS(parse_element("u", e1), WrongGenerator);
}

TEST_CASE("print then parse is the identity") {
  gen::Rng rng(31337);
  int n = 0;
  for (int round = 0; round < 170; ++round)
    for (const auto &ring : gen::all_rings()) {
      const auto p = gen::graded(rng, ring, {5, 3, 30, 6, 1000, 12});
      const auto text = print_element(p);
      CAPTURE(text);
      CHECK(parse_element(text, ring) == p);
      ++n;
    }
  CHECK(n >= 1000);
}

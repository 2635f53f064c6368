#include "elkik/parse.hpp"

#include "elkik/errors.hpp"

#include <cctype>
#include <limits>

namespace elkik {

namespace {

class Parser {
public:
  Parser(std::string_view text, bool ctrl) : text_(text), ctrl_(ctrl) {}

  ExprAst parse() {
    auto e = expr();
    skip();
    if (pos_ < text_.size())
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'",
                       pos_);
    return e;
  }

private:
  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string nat_digits() {
    const auto start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      throw ParseError("expected a natural number", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint32_t small_nat() {
    const auto start = pos_;
    const auto digits = nat_digits();
    if (digits.size() > 9)
      throw ParseError("number too large", start);
    return static_cast<std::uint32_t>(std::stoul(digits));
  }

  ExprAst expr() {
    skip();
    ExprAst sum;
    sum.kind = ExprAst::Kind::Sum;
    sum.position = pos_;
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    }
    sum.children.push_back(term());
    sum.negated.push_back(neg);
    while (peek('+') || peek('-')) {
      neg = text_[pos_] == '-';
      ++pos_;
      sum.children.push_back(term());
      sum.negated.push_back(neg);
    }
    return sum;
  }

  ExprAst term() {
    skip();
    ExprAst prod;
    prod.kind = ExprAst::Kind::Product;
    prod.position = pos_;
    prod.children.push_back(factor());
    while (peek('*')) {
      ++pos_;
      prod.children.push_back(factor());
    }
    return prod;
  }

  ExprAst factor() {
    auto a = atom();
    if (peek('^')) {
      const auto at = pos_;
      ++pos_;
      skip();
      ExprAst p;
      p.kind = ExprAst::Kind::Power;
      p.position = at;
      p.n = small_nat();
      p.children.push_back(std::move(a));
      return p;
    }
    return a;
  }

  ExprAst atom() {
    skip();
    ExprAst a;
    a.position = pos_;
    if (pos_ >= text_.size())
      throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto lit = nat_digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        const auto den_pos = ++pos_;
        auto den = nat_digits();
        if (den.find_first_not_of('0') == std::string::npos)
          throw ParseError("zero denominator", den_pos);
        lit += "/" + den;
      }
      a.kind = ExprAst::Kind::Rational;
      a.value = Scalar::from_string(lit);
      return a;
    }
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!peek(')'))
        throw ParseError("expected ')'", pos_);
      ++pos_;
      inner.position = a.position;
      return inner;
    }
    if (c == 'y' || c == 't' || c == 'u') {
      ++pos_;
      a.kind = c == 'y' ? ExprAst::Kind::Y
               : c == 't' ? ExprAst::Kind::T
                          : ExprAst::Kind::U;
      return a;
    }
    if (c == 'x') {
      ++pos_;
      const bool has_index = pos_ < text_.size() &&
                             std::isdigit(static_cast<unsigned char>(text_[pos_]));
      if (ctrl_ && !has_index) {
        a.kind = ExprAst::Kind::CtrlX;
        return a;
      }
      if (!has_index)
        throw ParseError("expected x-index after 'x'", pos_);
      a.kind = ExprAst::Kind::X;
      a.n = small_nat();
      return a;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  bool ctrl_;
  std::size_t pos_ = 0;
};

GradedPoly generator(const RingId &ring, const ExprAst &a) {
  using K = ExprAst::Kind;
  const bool ctrl = ring.kind == RingId::Kind::CTRL;
  auto reject = [&](const std::string &g) -> GradedPoly {
    throw WrongGenerator("generator " + g + " does not exist in " +
                             ring.name(),
                         a.position);
  };
  switch (a.kind) {
  case K::Y:
    if (ctrl)
      return reject("y");
    return GradedPoly::monomial(ring, {}, RBasisIndex::y(1));
  case K::T:
    if (!ring.has_t())
      return reject("t");
    return GradedPoly::monomial(ring, {1, 0}, RBasisIndex::one());
  case K::U:
    if (!ring.has_u())
      return reject("u");
    return GradedPoly::monomial(ring, {0, 1}, RBasisIndex::one());
  case K::X:
    if (ctrl)
      return reject("x" + std::to_string(a.n));
    return GradedPoly::monomial(ring, {}, RBasisIndex::x(a.n));
  case K::CtrlX:
    if (!ctrl)
      return reject("x");
    return GradedPoly::monomial(ring, {}, RBasisIndex::y(1));
  default:
    break;
  }
  throw PreconditionError("not a generator node");
}

} // namespace

ExprAst parse_expr(std::string_view text, bool ctrl) {
  return Parser(text, ctrl).parse();
}

GradedPoly evaluate(const ExprAst &ast, const RingId &ring,
                    const Field &field) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
  case K::Sum: {
    GradedPoly acc(ring);
    for (std::size_t i = 0; i < ast.children.size(); ++i) {
      auto v = evaluate(ast.children[i], ring, field);
      acc = ast.negated[i] ? acc - v : acc + v;
    }
    return acc;
  }
  case K::Product: {
    auto acc = evaluate(ast.children.front(), ring, field);
    for (std::size_t i = 1; i < ast.children.size(); ++i)
      acc = acc * evaluate(ast.children[i], ring, field);
    return acc;
  }
  case K::Power:
    return g_pow(evaluate(ast.children.front(), ring, field), ast.n);
  case K::Rational:
    return GradedPoly::constant(ring, field.is_rational()
                                          ? ast.value
                                          : field.make(0) + ast.value);
  default:
    return generator(ring, ast);
  }
}

GradedPoly parse_element(std::string_view text, const RingId &ring,
                         const Field &field) {
  return evaluate(parse_expr(text, ring.kind == RingId::Kind::CTRL), ring,
                  field);
}

namespace {

std::uint32_t bracket_param(std::string_view text, std::size_t open,
                            std::string_view key) {
  const std::string prefix = "[" + std::string(key) + "=";
  if (text.substr(open, prefix.size()) != prefix)
    throw ParseError("expected '" + prefix + "'", open);
  const auto start = open + prefix.size();
  auto end = start;
  while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
    ++end;
  if (end == start || end - start > 9)
    throw ParseError("expected a natural number", start);
  if (end + 1 != text.size() || text[end] != ']')
    throw ParseError("expected ']' at end", end);
  return static_cast<std::uint32_t>(
      std::stoul(std::string(text.substr(start, end - start))));
}

} // namespace

RingId parse_ring(std::string_view text) {
  if (text == "R")
    return RingId::r_only();
  if (text == "GS")
    return RingId::gs();
  if (text == "E2")
    return RingId::e2();
  if (text == "CTRL")
    return RingId::ctrl();
  if (text == "E1")
    return RingId::e1(2);
  if (text.substr(0, 2) == "E1")
    return RingId::e1(bracket_param(text, 2, "m"));
  throw InvalidParameter("unknown ring '" + std::string(text) + "'");
}

SystemId parse_system(std::string_view text, const RingId &ring) {
  if (text == "f")
    return SystemId::for_ring(ring);
  if (text.substr(0, 1) == "f") {
    if (ring.kind != RingId::Kind::E1)
      throw InvalidParameter("only the E1 family takes a system exponent");
    return SystemId::for_ring(ring, bracket_param(text, 1, "n"));
  }
  throw InvalidParameter("unknown system '" + std::string(text) + "'");
}

} // namespace elkik

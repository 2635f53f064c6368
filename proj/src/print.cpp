#include "elkik/print.hpp"

namespace elkik {

namespace {

std::string power(const char *var, std::uint32_t e) {
  std::string s = var;
  if (e > 1)
    s += "^" + std::to_string(e);
  return s;
}

} // namespace

std::string format_monomial(std::uint32_t ypow, std::int32_t xa,
                            std::int32_t xb, std::uint32_t dt,
                            std::uint32_t du, bool ctrl) {
  std::vector<std::string> f;
  if (ypow > 0)
    f.push_back(power(ctrl ? "x" : "y", ypow));
  if (xa >= 0)
    f.push_back("x" + std::to_string(xa));
  if (xb >= 0)
    f.push_back("x" + std::to_string(xb));
  if (dt > 0)
    f.push_back(power("t", dt));
  if (du > 0)
    f.push_back(power("u", du));
  if (f.empty())
    return "1";
  std::string s = f.front();
  for (std::size_t i = 1; i < f.size(); ++i)
    s += "*" + f[i];
  return s;
}

std::string
join_terms(const std::vector<std::pair<Scalar, std::string>> &terms) {
  if (terms.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &[c, mono] : terms) {
    const bool negative = c.modulus() == 0 && sgn(c.value()) < 0;
    const Scalar mag = negative ? -c : c;
    std::string body;
    if (mono == "1")
      body = mag.str();
    else if (mag.is_one())
      body = mono;
    else
      body = mag.str() + "*" + mono;
    if (first)
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::string print_element(const GradedPoly &p) {
  const bool ctrl = p.ring().kind == RingId::Kind::CTRL;
  std::vector<std::pair<Scalar, std::string>> terms;
  for (const auto &[deg, coeff] : p.terms())
    for (const auto &[idx, c] : coeff.support()) {
      const auto ypow = idx.is_y() ? idx.n : 0u;
      const auto xa = idx.is_x() ? static_cast<std::int32_t>(idx.n) : -1;
      terms.emplace_back(c, format_monomial(ypow, xa, -1, deg.dt, deg.du, ctrl));
    }
  return join_terms(terms);
}

} // namespace elkik

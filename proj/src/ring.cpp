#include "elkik/ring.hpp"

#include "elkik/errors.hpp"

#include <algorithm>

namespace elkik {

RElement::RElement(RBasisIndex idx, Scalar c) {
  if (!c.is_zero())
    support_.emplace(idx, std::move(c));
}

Scalar RElement::coefficient(RBasisIndex idx) const {
  auto it = support_.find(idx);
  return it == support_.end() ? Scalar(0) : it->second;
}

void RElement::add_term(RBasisIndex idx, const Scalar &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = support_.try_emplace(idx, c);
  if (inserted)
    return;
  it->second += c;
  if (it->second.is_zero())
    support_.erase(it);
}

RElement RElement::operator-() const {
  RElement r;
  for (const auto &[idx, c] : support_)
    r.support_.emplace(idx, -c);
  return r;
}

RElement RElement::scaled(const Scalar &c) const {
  RElement r;
  if (c.is_zero())
    return r;
  for (const auto &[idx, v] : support_)
    r.add_term(idx, v * c);
  return r;
}

RElement operator+(const RElement &a, const RElement &b) {
  RElement r = a;
  for (const auto &[idx, c] : b.support_)
    r.add_term(idx, c);
  return r;
}

RElement operator-(const RElement &a, const RElement &b) { return a + (-b); }

std::optional<RBasisIndex> r_mul_basis(RBasisIndex a, RBasisIndex b) {
  if (a.is_x() && b.is_x())
    return std::nullopt;
  if (a.is_y() && b.is_y())
    return RBasisIndex::y(a.n + b.n);
  const auto yv = a.is_y() ? a : b;
  const auto xv = a.is_x() ? a : b;
  if (yv.n > xv.n)
    return std::nullopt;
  return RBasisIndex::x(xv.n - yv.n);
}

RElement r_mul(const RElement &a, const RElement &b) {
  RElement r;
  for (const auto &[ia, ca] : a.support())
    for (const auto &[ib, cb] : b.support())
      if (auto idx = r_mul_basis(ia, ib))
        r.add_term(*idx, ca * cb);
  return r;
}

RingId RingId::e1(std::uint32_t m) {
  if (m < 2)
    throw InvalidParameter("E1 requires m >= 2, got " + std::to_string(m));
  return {Kind::E1, m};
}

std::string RingId::name() const {
  switch (kind) {
  case Kind::ROnly:
    return "R";
  case Kind::GS:
    return "GS";
  case Kind::E1:
    return m == 2 ? "E1" : "E1[m=" + std::to_string(m) + "]";
  case Kind::E2:
    return "E2";
  case Kind::CTRL:
    return "CTRL";
  }
  return "?";
}

RElement coeff_mul(const RingId &ring, const RElement &a, const RElement &b) {
  if (ring.kind != RingId::Kind::CTRL)
    return r_mul(a, b);
  RElement r;
  for (const auto &[ia, ca] : a.support())
    for (const auto &[ib, cb] : b.support())
      r.add_term(RBasisIndex::y(ia.n + ib.n), ca * cb);
  return r;
}

bool AnnihilatorBasis::contains(RBasisIndex idx) const {
  if (y_from && idx.is_y() && idx.n >= *y_from)
    return true;
  return std::find(finite.begin(), finite.end(), idx) != finite.end();
}

std::vector<RBasisIndex> AnnihilatorBasis::up_to(std::uint32_t bound) const {
  std::vector<RBasisIndex> out;
  if (y_from)
    for (auto a = *y_from; a <= bound; ++a)
      out.push_back(RBasisIndex::y(a));
  for (auto idx : finite)
    if (idx.n <= bound)
      out.push_back(idx);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

AnnihilatorBasis x_prefix(std::int64_t last) {
  AnnihilatorBasis b;
  for (std::int64_t i = 0; i <= last; ++i)
    b.finite.push_back(RBasisIndex::x(static_cast<std::uint32_t>(i)));
  return b;
}

} // namespace

AnnihilatorBasis ann_formula(const RingId &ring, std::uint32_t dt,
                             std::uint32_t du) {
  if (du != 0 && !ring.has_u())
    throw InvalidParameter("u-degree in ring " + ring.name());
  switch (ring.kind) {
  case RingId::Kind::ROnly:
    throw UnsupportedRing("annihilator of t^i u^j is undefined in R");
  case RingId::Kind::GS:
    return {};
  case RingId::Kind::E1:
    return x_prefix(static_cast<std::int64_t>(dt) - ring.m);
  case RingId::Kind::E2:
    if (du == 0)
      return x_prefix(static_cast<std::int64_t>(dt) - 2);
    return x_prefix(dt);
  case RingId::Kind::CTRL: {
    AnnihilatorBasis b;
    if (dt >= 2)
      b.y_from = 1;
    return b;
  }
  }
  return {};
}

namespace {

void validate_terms(const RingId &ring, const GradedPoly::Terms &terms) {
  for (const auto &[deg, coeff] : terms) {
    if (deg.du != 0 && !ring.has_u())
      throw InvalidParameter("generator u does not exist in " + ring.name());
    if (deg.dt != 0 && !ring.has_t())
      throw InvalidParameter("generator t does not exist in " + ring.name());
    if (ring.kind == RingId::Kind::CTRL)
      for (const auto &[idx, c] : coeff.support())
        if (idx.is_x())
          throw InvalidParameter("indexed x does not exist in CTRL");
  }
}

} // namespace

GradedPoly GradedPoly::from_terms(RingId ring, Terms terms) {
  validate_terms(ring, terms);
  GradedPoly p(ring);
  p.terms_ = std::move(terms);
  return reduce(std::move(p));
}

GradedPoly GradedPoly::monomial(RingId ring, Degree deg, RBasisIndex idx,
                                Scalar c) {
  Terms terms;
  terms.emplace(deg, RElement(idx, std::move(c)));
  return from_terms(ring, std::move(terms));
}

GradedPoly GradedPoly::constant(RingId ring, Scalar c) {
  return monomial(ring, {}, RBasisIndex::one(), std::move(c));
}

RElement GradedPoly::component(Degree d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? RElement{} : it->second;
}

std::uint32_t GradedPoly::max_dt() const {
  std::uint32_t m = 0;
  for (const auto &[d, c] : terms_)
    m = std::max(m, d.dt);
  return m;
}

std::uint32_t GradedPoly::max_du() const {
  std::uint32_t m = 0;
  for (const auto &[d, c] : terms_)
    m = std::max(m, d.du);
  return m;
}

std::uint32_t GradedPoly::max_y() const {
  std::uint32_t m = 0;
  for (const auto &[d, c] : terms_)
    for (const auto &[idx, v] : c.support())
      if (idx.is_y())
        m = std::max(m, idx.n);
  return m;
}

std::optional<std::uint32_t> GradedPoly::max_x() const {
  std::optional<std::uint32_t> m;
  for (const auto &[d, c] : terms_)
    for (const auto &[idx, v] : c.support())
      if (idx.is_x())
        m = std::max(m.value_or(0), idx.n);
  return m;
}

std::optional<std::uint32_t> GradedPoly::min_total_degree() const {
  std::optional<std::uint32_t> m;
  for (const auto &[d, c] : terms_)
    m = std::min(m.value_or(d.total()), d.total());
  return m;
}

GradedPoly reduce(GradedPoly p) {
  if (!p.ring_.has_t())
    return p;
  for (auto it = p.terms_.begin(); it != p.terms_.end();) {
    const auto ann = ann_formula(p.ring_, it->first.dt, it->first.du);
    if (!ann.empty()) {
      std::vector<RBasisIndex> doomed;
      for (const auto &[idx, c] : it->second.support())
        if (ann.contains(idx))
          doomed.push_back(idx);
      for (auto idx : doomed)
        it->second.erase(idx);
    }
    if (it->second.is_zero())
      it = p.terms_.erase(it);
    else
      ++it;
  }
  return p;
}

namespace {

void require_same_ring(const GradedPoly &p, const GradedPoly &q) {
  if (!(p.ring() == q.ring()))
    throw RingMismatch("operands live in " + p.ring().name() + " and " +
                       q.ring().name());
}

} // namespace

GradedPoly g_add(const GradedPoly &p, const GradedPoly &q) {
  require_same_ring(p, q);
  GradedPoly::Terms terms = p.terms();
  for (const auto &[d, c] : q.terms()) {
    auto &slot = terms[d];
    slot = slot + c;
  }
  std::erase_if(terms, [](const auto &kv) { return kv.second.is_zero(); });
  return GradedPoly::from_terms(p.ring(), std::move(terms));
}

GradedPoly g_neg(const GradedPoly &p) {
  GradedPoly::Terms terms;
  for (const auto &[d, c] : p.terms())
    terms.emplace(d, -c);
  return GradedPoly::from_terms(p.ring(), std::move(terms));
}

GradedPoly g_mul(const GradedPoly &p, const GradedPoly &q) {
  require_same_ring(p, q);
  GradedPoly::Terms terms;
  for (const auto &[dp, cp] : p.terms())
    for (const auto &[dq, cq] : q.terms()) {
      auto prod = coeff_mul(p.ring(), cp, cq);
      if (prod.is_zero())
        continue;
      auto &slot = terms[Degree{dp.dt + dq.dt, dp.du + dq.du}];
      slot = slot + prod;
    }
  std::erase_if(terms, [](const auto &kv) { return kv.second.is_zero(); });
  return GradedPoly::from_terms(p.ring(), std::move(terms));
}

GradedPoly g_pow(const GradedPoly &p, std::uint32_t e) {
  GradedPoly r = GradedPoly::constant(p.ring(), Scalar(1));
  for (std::uint32_t i = 0; i < e; ++i)
    r = g_mul(r, p);
  return r;
}

GradedPoly truncate(const GradedPoly &p, std::uint32_t precision) {
  GradedPoly::Terms terms;
  for (const auto &[d, c] : p.terms())
    if (d.total() < precision)
      terms.emplace(d, c);
  return GradedPoly::from_terms(p.ring(), std::move(terms));
}

PrecisionElement::PrecisionElement(GradedPoly body, std::uint32_t precision)
    : body_(truncate(body, precision)), precision_(precision) {
  if (precision == 0)
    throw InvalidParameter("precision must be at least 1");
}

PrecisionElement operator+(const PrecisionElement &a,
                           const PrecisionElement &b) {
  return {g_add(a.body_, b.body_), std::min(a.precision_, b.precision_)};
}

PrecisionElement operator*(const PrecisionElement &a,
                           const PrecisionElement &b) {
  return {g_mul(a.body_, b.body_), std::min(a.precision_, b.precision_)};
}

PrecisionElement alpha_hat(const RingId &ring, std::uint32_t N) {
  if (ring.kind != RingId::Kind::GS && ring.kind != RingId::Kind::E1 &&
      ring.kind != RingId::Kind::E2)
    throw UnsupportedRing("alpha_hat is defined over GS, E1, E2; not " +
                          ring.name());
  if (N == 0)
    throw InvalidParameter("precision must be at least 1");
  GradedPoly::Terms terms;
  for (std::uint32_t i = 0; i < N; ++i)
    terms.emplace(Degree{i, 0}, RElement(RBasisIndex::x(i), Scalar(1)));
  return {GradedPoly::from_terms(ring, std::move(terms)), N};
}

SystemId SystemId::for_ring(const RingId &ring, std::uint32_t n) {
  switch (ring.kind) {
  case RingId::Kind::GS:
    return {ring, 0};
  case RingId::Kind::E1:
    if (n == 0)
      n = ring.m;
    if (n < ring.m)
      throw InvalidParameter("system exponent n=" + std::to_string(n) +
                             " below ring parameter m=" +
                             std::to_string(ring.m));
    return {ring, n};
  case RingId::Kind::E2:
    if (n != 0 && n != 2)
      throw InvalidParameter("E2 system is fixed: f2 = t^2 X");
    return {ring, 2};
  default:
    throw UnsupportedRing("no equation system over " + ring.name());
  }
}

std::vector<GradedPoly> SystemId::coefficients() const {
  std::vector<GradedPoly> out;
  out.push_back(GradedPoly::monomial(ring, {1, 0}, RBasisIndex::one()) -
                GradedPoly::monomial(ring, {}, RBasisIndex::y(1)));
  if (ring.kind == RingId::Kind::E1 || ring.kind == RingId::Kind::E2)
    out.push_back(GradedPoly::monomial(ring, {n, 0}, RBasisIndex::one()));
  if (ring.kind == RingId::Kind::E2)
    out.push_back(GradedPoly::monomial(ring, {0, 1}, RBasisIndex::one()));
  return out;
}

std::string SystemId::name() const {
  switch (ring.kind) {
  case RingId::Kind::GS:
    return "f1=(t-y)X";
  case RingId::Kind::E1:
    return "f1=(t-y)X, f2=t^" + std::to_string(n) + "X";
  case RingId::Kind::E2:
    return "f1=(t-y)X, f2=t^2X, f3=uX";
  default:
    return "?";
  }
}

std::vector<Residue> apply_system(const SystemId &system,
                                  const PrecisionElement &candidate) {
  if (!(candidate.body().ring() == system.ring))
    throw RingMismatch("system over " + system.ring.name() +
                       " applied to element of " +
                       candidate.body().ring().name());
  std::vector<Residue> out;
  std::uint32_t k = 1;
  for (const auto &g : system.coefficients()) {
    const auto product = g_mul(g, candidate.body());
    const auto prec = candidate.precision() + g.min_total_degree().value_or(0);
    out.push_back(Residue{"f" + std::to_string(k++),
                          PrecisionElement(product, prec), product.is_zero()});
  }
  return out;
}

} // namespace elkik

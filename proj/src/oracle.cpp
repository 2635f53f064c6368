#include "elkik/oracle.hpp"

#include "elkik/errors.hpp"
#include "elkik/print.hpp"

#include <algorithm>
#include <set>

namespace elkik::oracle {

Window Window::for_ring(const RingId &ring, std::uint32_t dt, std::uint32_t du,
                        std::uint32_t mx) {
  Window w{dt, du, mx};
  if (!ring.has_t())
    w.dt = 0;
  if (!ring.has_u())
    w.du = 0;
  check_margin(ring, w);
  return w;
}

void check_margin(const RingId &ring, const Window &w) {
  if (w.du != 0 && !ring.has_u())
    throw WindowTooSmall("window has u-degree but " + ring.name() +
                         " has no u");
  if (w.mx < w.dt + 2)
    throw WindowTooSmall("window " + w.str() + " violates mx >= dt + 2");
}

std::string Window::str() const {
  return "(dt=" + std::to_string(dt) + ", du=" + std::to_string(du) +
         ", mx=" + std::to_string(mx) + ")";
}

std::optional<RawMono> raw_mul(const RawMono &a, const RawMono &b) {
  if (a.x_count() + b.x_count() > 2)
    return std::nullopt;
  RawMono r{a.dt + b.dt, a.du + b.du, a.ypow + b.ypow, -1, -1};
  std::vector<std::int32_t> xs;
  for (auto x : {a.xa, a.xb, b.xa, b.xb})
    if (x >= 0)
      xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  if (!xs.empty())
    r.xa = xs[0];
  if (xs.size() > 1)
    r.xb = xs[1];
  return r;
}

std::string format_raw(const RawMono &m, bool ctrl) {
  return format_monomial(m.ypow, m.xa, m.xb, m.dt, m.du, ctrl);
}

std::optional<std::size_t> MonoBasis::find(const RawMono &m) const {
  auto it = index_.find(m);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

void MonoBasis::push(const RawMono &m) {
  index_.emplace(m, monos_.size());
  monos_.push_back(m);
}

namespace {

RawMono x_mono(std::uint32_t i, std::uint32_t ypow = 0, std::uint32_t dt = 0,
               std::uint32_t du = 0) {
  return {dt, du, ypow, static_cast<std::int32_t>(i), -1};
}

RawMono term_mono(Degree d, RBasisIndex idx) {
  return {d.dt, d.du, idx.is_y() ? idx.n : 0u,
          idx.is_x() ? static_cast<std::int32_t>(idx.n) : -1, -1};
}

bool fits(const RawMono &m, std::uint32_t mx, int xcap) {
  return m.ypow <= mx && m.xa <= static_cast<std::int32_t>(mx) &&
         m.xb <= static_cast<std::int32_t>(mx) && m.x_count() <= xcap;
}

// Local order inside one slice: mixed monomials (x-count descending, then
// y-exponent descending), then y^0..y^mx, then x_0..x_mx.
std::vector<RawMono> slice_monomials(Degree d, std::uint32_t mx, int xcap) {
  std::vector<RawMono> out;
  if (xcap >= 2)
    for (std::int64_t a = mx; a >= 0; --a)
      for (std::uint32_t i = 0; i <= mx; ++i)
        for (std::uint32_t j = i; j <= mx; ++j)
          out.push_back({d.dt, d.du, static_cast<std::uint32_t>(a),
                         static_cast<std::int32_t>(i),
                         static_cast<std::int32_t>(j)});
  if (xcap >= 1)
    for (std::uint32_t a = mx; a >= 1; --a)
      for (std::uint32_t i = 0; i <= mx; ++i)
        out.push_back(x_mono(i, a, d.dt, d.du));
  for (std::uint32_t a = 0; a <= mx; ++a)
    out.push_back({d.dt, d.du, a, -1, -1});
  if (xcap >= 1)
    for (std::uint32_t i = 0; i <= mx; ++i)
      out.push_back(x_mono(i, 0, d.dt, d.du));
  return out;
}

int generator_x_count(const RawPoly &g) {
  int c = 0;
  for (const auto &[s, m] : g)
    c = std::max(c, m.x_count());
  return c;
}

} // namespace

std::vector<RawPoly> generators(const Presentation &pres, std::uint32_t mx) {
  const auto &ring = pres.ring;
  const auto one = pres.field.make(1);
  const auto minus_one = pres.field.make(-1);
  std::vector<RawPoly> gens;
  if (ring.kind == RingId::Kind::CTRL) {
    gens.push_back({{one, RawMono{2, 0, 1, -1, -1}}});
    return gens;
  }
  gens.push_back({{one, x_mono(0, 1)}});
  for (std::uint32_t i = 0; i + 1 <= mx; ++i)
    gens.push_back({{one, x_mono(i)}, {minus_one, x_mono(i + 1, 1)}});
  auto dropped = [&](std::uint32_t j) {
    return std::find(pres.dropped_n_generators.begin(),
                     pres.dropped_n_generators.end(),
                     j) != pres.dropped_n_generators.end();
  };
  if (ring.kind == RingId::Kind::E1 || ring.kind == RingId::Kind::E2) {
    const auto m = ring.kind == RingId::Kind::E1 ? ring.m : 2u;
    for (std::uint32_t j = 0; j <= mx; ++j)
      if (!dropped(j))
        gens.push_back({{one, x_mono(j, 0, m + j)}});
  }
  if (ring.kind == RingId::Kind::E2)
    for (std::uint32_t j = 0; j <= mx; ++j)
      gens.push_back({{one, x_mono(j, 0, j, 1)}});
  return gens;
}

WindowSpace::WindowSpace(Presentation pres, std::vector<Degree> slices,
                         std::uint32_t mx, int xcap)
    : pres_(std::move(pres)), slices_(std::move(slices)), mx_(mx),
      xcap_(pres_.ring.kind == RingId::Kind::CTRL ? 0 : xcap) {
  std::sort(slices_.begin(), slices_.end());
  slices_.erase(std::unique(slices_.begin(), slices_.end()), slices_.end());
  for (const auto &d : slices_) {
    if (d.du != 0 && !pres_.ring.has_u())
      throw InvalidParameter("u-slice requested in " + pres_.ring.name());
    if (d.dt != 0 && !pres_.ring.has_t())
      throw InvalidParameter("t-slice requested in " + pres_.ring.name());
  }

  const auto gens = generators(pres_, mx_);
  std::vector<SparseVec> rel_rows;
  for (const auto &d : slices_) {
    const auto offset = basis_.size();
    const auto local = slice_monomials(d, mx_, xcap_);
    for (const auto &m : local)
      basis_.push(m);

    // Generator multiples that stay inside this slice's monomials.
    Echelon ech(basis_.size());
    for (const auto &g : gens) {
      const auto gd = g.front().second.degree();
      if (gd.dt > d.dt || gd.du > d.du)
        continue;
      const int room = xcap_ - generator_x_count(g);
      if (room < 0)
        continue;
      std::vector<RawMono> multipliers;
      for (std::uint32_t b = 0; b <= mx_; ++b) {
        multipliers.push_back({d.dt - gd.dt, d.du - gd.du, b, -1, -1});
        if (room >= 1)
          for (std::uint32_t j = 0; j <= mx_; ++j)
            multipliers.push_back(x_mono(j, b, d.dt - gd.dt, d.du - gd.du));
      }
      for (const auto &mult : multipliers) {
        SparseVec row;
        bool inside = true;
        for (const auto &[c, gm] : g) {
          auto prod = raw_mul(gm, mult);
          if (!prod || !fits(*prod, mx_, xcap_)) {
            inside = false;
            break;
          }
          add_entry(row, *basis_.find(*prod), c);
        }
        if (inside && !row.empty())
          ech.insert(std::move(row));
      }
    }
    auto rel = std::move(ech).finish();
    std::set<std::size_t> pivots;
    for (auto p : rel.pivots())
      pivots.insert(p);
    for (std::size_t k = offset; k < basis_.size(); ++k)
      if (basis_.at(k).is_pure() && !pivots.count(k))
        standard_.push_back(k);
    for (const auto &r : rel.rows())
      rel_rows.push_back(r);
  }
  relations_ = Subspace::span(basis_.size(), rel_rows);
}

std::shared_ptr<const WindowSpace>
WindowSpace::make(const Presentation &pres, const Window &w, int xcap) {
  std::vector<Degree> slices;
  for (std::uint32_t d = 0; d <= w.dt; ++d)
    for (std::uint32_t e = 0; e <= w.du; ++e)
      slices.push_back({d, e});
  return std::make_shared<const WindowSpace>(pres, std::move(slices), w.mx,
                                             xcap);
}

bool WindowSpace::has_slice(Degree d) const {
  return std::binary_search(slices_.begin(), slices_.end(), d);
}

std::vector<std::size_t> WindowSpace::standard_in(Degree d) const {
  std::vector<std::size_t> out;
  for (auto k : standard_)
    if (basis_.at(k).degree() == d)
      out.push_back(k);
  return out;
}

SparseVec WindowSpace::vectorize(const RawPoly &p) const {
  SparseVec v;
  for (const auto &[c, m] : p) {
    auto k = basis_.find(m);
    if (!k)
      throw WindowTooSmall("monomial " +
                           format_raw(m, pres_.ring.kind ==
                                             RingId::Kind::CTRL) +
                           " lies outside the window");
    add_entry(v, *k, c);
  }
  return v;
}

SparseVec WindowSpace::vectorize(const GradedPoly &p) const {
  RawPoly raw;
  for (const auto &[d, coeff] : p.terms())
    for (const auto &[idx, c] : coeff.support())
      raw.emplace_back(c, term_mono(d, idx));
  return vectorize(raw);
}

GradedPoly WindowSpace::to_graded(const SparseVec &v) const {
  GradedPoly::Terms terms;
  for (const auto &[k, c] : v) {
    const auto &m = basis_.at(k);
    if (!m.is_pure())
      throw PreconditionError("vector has a mixed monomial " +
                              format_raw(m, false));
    const auto idx = m.xa >= 0 ? RBasisIndex::x(m.xa) : RBasisIndex::y(m.ypow);
    terms[m.degree()].add_term(idx, c);
  }
  std::erase_if(terms, [](const auto &kv) { return kv.second.is_zero(); });
  return GradedPoly::from_terms(pres_.ring, std::move(terms));
}

std::string WindowSpace::format(const SparseVec &v) const {
  const bool ctrl = pres_.ring.kind == RingId::Kind::CTRL;
  std::vector<std::pair<Scalar, std::string>> terms;
  for (const auto &[k, c] : v)
    terms.emplace_back(c, format_raw(basis_.at(k), ctrl));
  return join_terms(terms);
}

Subspace relation_span(const Presentation &pres, const Window &w) {
  check_margin(pres.ring, w);
  return WindowSpace::make(pres, w)->relations();
}

SparseVec quotient_reduce(const SparseVec &v, const Subspace &rel) {
  return rel.reduce(v);
}

SparseVec multiply(const WindowSpace &from, const SparseVec &v,
                          const GradedPoly &g, const WindowSpace &to) {
  SparseVec out;
  for (const auto &[k, c] : v) {
    const auto &m = from.basis().at(k);
    for (const auto &[d, coeff] : g.terms())
      for (const auto &[idx, gc] : coeff.support()) {
        auto prod = raw_mul(m, term_mono(d, idx));
        if (!prod)
          throw WindowTooSmall("product with three x-factors");
        auto target = to.basis().find(*prod);
        if (!target)
          throw WindowTooSmall("product leaves the codomain window");
        add_entry(out, *target, c * gc);
      }
  }
  return to.reduce(std::move(out));
}

LinMap mul_map(const Presentation &pres, const GradedPoly &g,
               const SpacePtr &domain) {
  if (!(g.ring() == pres.ring))
    throw RingMismatch("multiplier lives in " + g.ring().name());
  std::set<Degree> target;
  for (const auto &s : domain->slices())
    for (const auto &[d, c] : g.terms())
      target.insert({s.dt + d.dt, s.du + d.du});
  auto mx = domain->mx() + g.max_y();
  int xcap = domain->xcap();
  if (auto gx = g.max_x()) {
    xcap = std::max(xcap, domain->xcap() + 1);
    mx = std::max(mx, domain->mx() + *gx + 1);
  }
  auto codomain = std::make_shared<const WindowSpace>(
      pres, std::vector<Degree>(target.begin(), target.end()), mx, xcap);
  LinMap m{domain, codomain, domain->standard(), {}};
  m.images.reserve(m.columns.size());
  for (auto col : m.columns)
    m.images.push_back(
        multiply(*domain, SparseVec{{col, Scalar(1)}}, g, *codomain));
  return m;
}

LinMap mul_map(const Presentation &pres, const GradedPoly &g,
               const Window &w) {
  check_margin(pres.ring, w);
  return mul_map(pres, g, WindowSpace::make(pres, w));
}

namespace {

Subspace lift_kernel(const LinMap &m, const Subspace &positional) {
  std::vector<SparseVec> vecs;
  for (const auto &r : positional.rows()) {
    SparseVec v;
    for (const auto &[pos, c] : r)
      v.emplace(m.columns[pos], c);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(m.domain->basis().size(), vecs);
}

} // namespace

Subspace kernel(const LinMap &m) {
  return lift_kernel(m, kernel_of(m.images, m.codomain->basis().size()));
}

Subspace kernel(const std::vector<LinMap> &maps) {
  if (maps.empty())
    throw PreconditionError("kernel of an empty family of maps");
  const auto &first = maps.front();
  std::vector<SparseVec> stacked(first.columns.size());
  std::size_t offset = 0;
  for (const auto &m : maps) {
    if (m.domain != first.domain)
      throw DimensionMismatch("stacked maps must share the domain");
    for (std::size_t j = 0; j < m.images.size(); ++j)
      for (const auto &[k, c] : m.images[j])
        stacked[j].emplace(offset + k, c);
    offset += m.codomain->basis().size();
  }
  return lift_kernel(first, kernel_of(stacked, offset));
}

SparseVec apply(const LinMap &m, const SparseVec &v) {
  const auto reduced = m.domain->reduce(v);
  SparseVec out;
  for (const auto &[k, c] : reduced) {
    auto it = std::lower_bound(m.columns.begin(), m.columns.end(), k);
    if (it == m.columns.end() || *it != k)
      throw PreconditionError("vector outside the map's standard domain");
    axpy(out, c, m.images[static_cast<std::size_t>(it - m.columns.begin())]);
  }
  return out;
}

SpacePtr r_slice(const Presentation &pres, const Window &w) {
  return std::make_shared<const WindowSpace>(pres, std::vector<Degree>{{0, 0}},
                                             w.mx, 1);
}

Subspace annihilator_oracle(const Presentation &pres, std::uint32_t dt,
                            std::uint32_t du, const Window &w) {
  if (!pres.ring.has_t())
    throw UnsupportedRing("no t in " + pres.ring.name());
  if (du != 0 && !pres.ring.has_u())
    throw InvalidParameter("u-degree in " + pres.ring.name());
  if (dt + 2 > w.mx || du > std::max<std::uint32_t>(w.du, 0))
    throw WindowTooSmall("monomial t^" + std::to_string(dt) + "u^" +
                         std::to_string(du) + " exceeds window " + w.str());
  const auto g = GradedPoly::monomial(pres.ring, {dt, du}, RBasisIndex::one());
  return kernel(mul_map(pres, g, r_slice(pres, w)));
}

std::uint32_t default_torsion_exponent(const Window &w) {
  return w.dt + w.du + 2;
}

Subspace torsion_subspace(const Presentation &pres, const Window &w,
                          std::uint32_t K) {
  if (K == 0)
    throw PreconditionError("torsion exponent must be at least 1");
  if (!pres.ring.has_t())
    throw UnsupportedRing("no t in " + pres.ring.name());
  check_margin(pres.ring, w);
  auto domain = WindowSpace::make(pres, w);
  std::vector<LinMap> maps;
  maps.push_back(mul_map(
      pres, GradedPoly::monomial(pres.ring, {K, 0}, RBasisIndex::one()),
      domain));
  if (pres.ring.has_u())
    maps.push_back(mul_map(
        pres, GradedPoly::monomial(pres.ring, {0, K}, RBasisIndex::one()),
        domain));
  return kernel(maps);
}

bool products_agree(const GradedPoly &p, const GradedPoly &q,
                    const WindowSpace &space) {
  RawPoly raw;
  for (const auto &[dp, cp] : p.terms())
    for (const auto &[ip, sp] : cp.support())
      for (const auto &[dq, cq] : q.terms())
        for (const auto &[iq, sq] : cq.support()) {
          auto prod = raw_mul(term_mono(dp, ip), term_mono(dq, iq));
          if (!prod)
            throw WindowTooSmall("product with three x-factors");
          raw.emplace_back(sp * sq, *prod);
        }
  const auto oracle_side = space.reduce(space.vectorize(raw));
  const auto closed_side = space.vectorize(g_mul(p, q));
  return oracle_side == closed_side;
}

} // namespace elkik::oracle

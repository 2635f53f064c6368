#include "elkik/claims.hpp"

#include "elkik/errors.hpp"
#include "elkik/koszul.hpp"
#include "elkik/print.hpp"

#include <algorithm>

namespace elkik::claims {

using oracle::Presentation;
using oracle::SpacePtr;
using oracle::Window;
using oracle::WindowSpace;

namespace {

const std::vector<std::pair<ClaimId, const char *>> kNames = {
    {ClaimId::Basis, "C-basis"},
    {ClaimId::AnnT, "C-ann-t"},
    {ClaimId::Essential, "C-essential"},
    {ClaimId::AnnTU, "C-ann-tu"},
    {ClaimId::KernelI0, "C-kernel-I0"},
    {ClaimId::BoundedE2, "C-bounded-E2"},
    {ClaimId::Nwkpr, "C-nwkpr"},
    {ClaimId::GsDemo, "C-gs-demo"},
    {ClaimId::ApproxFailE1, "C-approx-fail-E1"},
    {ClaimId::ApproxFailE2, "C-approx-fail-E2"},
    {ClaimId::XiWitness, "C-xi-witness"},
    {ClaimId::RemarkWpr, "C-remark-wpr"},
};

constexpr const char *kFlatnessNote =
    "Computed in the base ring before henselization; the henselization is "
    "flat over it, so the conclusions transfer. That transfer is not "
    "computed.";

class Builder {
public:
  Builder(ClaimId id, std::string ring) {
    r_.id = id;
    r_.ring = std::move(ring);
  }

  void param(const std::string &k, std::int64_t v) { r_.params.emplace_back(k, v); }
  void param(const std::string &k, std::string v) {
    r_.params.emplace_back(k, std::move(v));
  }
  void window(const Window &w) {
    param("dt", w.dt);
    param("du", w.du);
    param("mx", w.mx);
  }
  void witness(std::string w) { r_.witnesses.push_back(std::move(w)); }
  void inventory(std::string line) { r_.inventory.push_back(std::move(line)); }
  void notes(std::string n) { r_.notes = std::move(n); }

  /// Records a check; a failure makes the report FALSIFIED with `counter`
  /// as the replayable counter-witness.
  bool check(bool ok, const std::string &what, const std::string &counter = {}) {
    r_.inventory.push_back(what + (ok ? ": ok" : ": FAILED"));
    if (!ok) {
      r_.status = Status::Falsified;
      r_.witnesses.push_back("counter-witness: " +
                             (counter.empty() ? what : counter));
    }
    return ok;
  }

  void inconclusive(const std::string &why) {
    r_.inventory.push_back("window boundary: " + why);
    if (r_.status == Status::Verified)
      r_.status = Status::Inconclusive;
  }

  ClaimReport take() { return std::move(r_); }

private:
  ClaimReport r_;
};

GradedPoly t_minus_y(const RingId &ring) {
  return GradedPoly::monomial(ring, {1, 0}, RBasisIndex::one()) -
         GradedPoly::monomial(ring, {}, RBasisIndex::y(1));
}

GradedPoly mono(const RingId &ring, Degree d, RBasisIndex idx) {
  return GradedPoly::monomial(ring, d, idx);
}

GradedPoly lift(const RingId &ring, const RElement &c, Degree d = {}) {
  GradedPoly::Terms terms;
  if (!c.is_zero())
    terms.emplace(d, c);
  return GradedPoly::from_terms(ring, std::move(terms));
}

std::string span_text(const WindowSpace &space, const Subspace &s) {
  if (s.is_zero())
    return "0";
  std::string out = "span{";
  for (std::size_t i = 0; i < s.rows().size(); ++i) {
    if (i)
      out += ", ";
    out += space.format(s.rows()[i]);
  }
  return out + "}";
}

std::string mono_text(std::uint32_t dt, std::uint32_t du) {
  return format_monomial(0, -1, -1, dt, du, false);
}

bool has_degree_zero_part(const WindowSpace &space, const SparseVec &v) {
  return std::any_of(v.begin(), v.end(), [&](const auto &kv) {
    return space.basis().at(kv.first).degree() == Degree{0, 0};
  });
}

Window grown(const RingId &ring, const Window &w, std::uint32_t by) {
  return Window::for_ring(ring, w.dt + by, w.du + by, w.mx + by);
}

/// Replays the degree-by-degree argument on gamma = sum c_i t^i (u-degree
/// zero part): c_0 y = 0, (c_i - c_(i+1) y) t^(i+1) = 0, c_N t^(N+1) = 0,
/// and c_i in k x_0 + ... + k x_(i-1) + d_0 x_i with d_0 the x_0-coefficient
/// of c_0. Returns a description of the first failing step.
std::optional<std::string> replay_recurrence(const GradedPoly &gamma) {
  const auto &ring = gamma.ring();
  const auto y = mono(ring, {}, RBasisIndex::y(1));
  std::uint32_t N = 2;
  for (const auto &[d, c] : gamma.terms())
    if (d.du == 0)
      N = std::max(N, d.dt);
  auto c = [&](std::uint32_t i) { return lift(ring, gamma.component({i, 0})); };
  auto tp = [&](std::uint32_t e) { return mono(ring, {e, 0}, RBasisIndex::one()); };

  if (!(c(0) * y).is_zero())
    return "c0*y != 0";
  for (std::uint32_t i = 0; i < N; ++i)
    if (!((c(i) - c(i + 1) * y) * tp(i + 1)).is_zero())
      return "(c" + std::to_string(i) + " - c" + std::to_string(i + 1) +
             "*y)*t^" + std::to_string(i + 1) + " != 0";
  if (!(c(N) * tp(N + 1)).is_zero())
    return "c" + std::to_string(N) + "*t^" + std::to_string(N + 1) + " != 0";

  const auto c0 = gamma.component({0, 0});
  const auto d0 = c0.coefficient(RBasisIndex::x(0));
  for (const auto &[idx, s] : c0.support())
    if (idx != RBasisIndex::x(0))
      return "c0 is not a multiple of x0";
  for (std::uint32_t i = 1; i <= N; ++i) {
    const auto ci = gamma.component({i, 0});
    for (const auto &[idx, s] : ci.support())
      if (!idx.is_x() || idx.n > i)
        return "c" + std::to_string(i) + " leaves k*x0 + ... + k*x" +
               std::to_string(i);
    if (!(ci.coefficient(RBasisIndex::x(i)) == d0))
      return "x" + std::to_string(i) + "-coefficient of c" +
             std::to_string(i) + " differs from d0";
  }
  return std::nullopt;
}

/// g * p computed by the oracle: raw product reduced modulo the
/// presentation, restricted to total degree < precision when given.
struct OracleProduct {
  SparseVec image;
  SpacePtr codomain;
};

OracleProduct oracle_product(const Presentation &pres, const GradedPoly &p,
                             const GradedPoly &g, std::uint32_t mx,
                             std::optional<std::uint32_t> precision) {
  const Window pw{p.max_dt(), p.max_du(), mx};
  auto domain = WindowSpace::make(pres, pw);
  auto map = oracle::mul_map(pres, g, domain);
  auto image = oracle::apply(map, domain->vectorize(p));
  if (precision)
    std::erase_if(image, [&](const auto &kv) {
      return map.codomain->basis().at(kv.first).degree().total() >= *precision;
    });
  return {std::move(image), map.codomain};
}

} // namespace

const std::vector<ClaimId> &all_claims() {
  static const std::vector<ClaimId> ids = [] {
    std::vector<ClaimId> v;
    for (const auto &[id, name] : kNames)
      v.push_back(id);
    return v;
  }();
  return ids;
}

std::string claim_name(ClaimId id) {
  for (const auto &[k, name] : kNames)
    if (k == id)
      return name;
  return "?";
}

std::optional<ClaimId> parse_claim(std::string_view text) {
  for (const auto &[k, name] : kNames)
    if (text == name)
      return k;
  return std::nullopt;
}

std::string status_name(Status s) {
  switch (s) {
  case Status::Verified:
    return "verified";
  case Status::Falsified:
    return "FALSIFIED";
  case Status::Inconclusive:
    return "inconclusive-window";
  }
  return "?";
}

Presentation Config::presentation(const RingId &ring) const {
  Presentation p = Presentation::of(ring, field);
  if (ring.kind == RingId::Kind::E1 || ring.kind == RingId::Kind::E2)
    p.dropped_n_generators = dropped_n_generators;
  return p;
}

Window Config::window(const RingId &ring) const {
  return Window::for_ring(ring, dt.value_or(8), du.value_or(8),
                          mx.value_or(12));
}

Window Config::koszul_window(const RingId &ring) const {
  const auto def = koszul::default_koszul_window(ring, max_stage);
  return Window::for_ring(ring, dt.value_or(def.dt), du.value_or(def.du),
                          mx.value_or(def.mx));
}

bool touches_boundary(const WindowSpace &space, const Subspace &s) {
  const auto mx = space.mx();
  for (const auto &r : s.rows())
    for (const auto &[k, c] : r) {
      const auto &m = space.basis().at(k);
      if (m.ypow == mx || m.xa == static_cast<std::int32_t>(mx) ||
          m.xb == static_cast<std::int32_t>(mx))
        return true;
    }
  return false;
}

ClaimReport verify_basis(const Config &cfg) {
  const auto ring = RingId::r_only();
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  Builder b(ClaimId::Basis, ring.name());
  b.param("mx", w.mx);

  // Two x-factors allowed so that x_i * x_j = 0 is derived, not assumed.
  const WindowSpace space(pres, {{0, 0}}, w.mx, 2);
  const auto &basis = space.basis();
  auto raw_vec = [&](std::uint32_t ypow, std::int32_t xa, std::int32_t xb) {
    return space.vectorize(
        oracle::RawPoly{{Scalar(1), oracle::RawMono{0, 0, ypow, xa, xb}}});
  };
  auto closed_vec = [&](const RElement &e) {
    return space.vectorize(lift(ring, e));
  };

  std::size_t pure = 0;
  std::vector<std::string> missing;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (basis.at(k).is_pure()) {
      ++pure;
      if (!space.reduce({{k, Scalar(1)}}).count(k))
        missing.push_back(oracle::format_raw(basis.at(k), false));
    }
  b.check(missing.empty() && space.standard().size() == pure,
          "standard monomials are exactly 1, y, ..., y^" +
              std::to_string(w.mx) + " and x0, ..., x" + std::to_string(w.mx),
          missing.empty() ? "" : "pivot on " + missing.front());

  // Spanning: every product of two basis vectors reduces to its closed form.
  std::size_t products = 0;
  std::optional<std::string> bad;
  for (std::uint32_t a = 0; a <= w.mx && !bad; ++a)
    for (std::uint32_t c = 0; a + c <= w.mx && !bad; ++c) {
      ++products;
      if (space.reduce(raw_vec(a + c, -1, -1)) !=
          closed_vec(r_mul(RElement(RBasisIndex::y(a), 1),
                           RElement(RBasisIndex::y(c), 1))))
        bad = "y^" + std::to_string(a) + " * y^" + std::to_string(c);
    }
  for (std::uint32_t a = 0; a <= w.mx && !bad; ++a)
    for (std::uint32_t i = 0; i <= w.mx && !bad; ++i) {
      ++products;
      const auto got = space.reduce(raw_vec(a, static_cast<std::int32_t>(i), -1));
      const auto want = closed_vec(
          r_mul(RElement(RBasisIndex::y(a), 1), RElement(RBasisIndex::x(i), 1)));
      if (got != want)
        bad = format_monomial(a, static_cast<std::int32_t>(i), -1, 0, 0, false);
    }
  for (std::uint32_t i = 0; i <= w.mx && !bad; ++i)
    for (std::uint32_t j = i; i + j + 1 <= w.mx && !bad; ++j) {
      ++products;
      if (!space.reduce(raw_vec(0, static_cast<std::int32_t>(i),
                                static_cast<std::int32_t>(j)))
               .empty())
        bad = format_monomial(0, static_cast<std::int32_t>(i),
                              static_cast<std::int32_t>(j), 0, 0, false);
    }
  b.check(!bad, "raw products of two basis vectors reduce to the closed form (" +
                    std::to_string(products) + " products)",
          bad.value_or(""));

  // y^n (e_0 x_0 + ... + e_n x_n) = e_n x_0.
  const std::uint32_t li = std::min<std::uint32_t>(4, w.mx);
  bool li_ok = true;
  std::string li_bad;
  for (std::uint32_t n = 0; n <= li; ++n)
    for (std::uint32_t i = 0; i <= n; ++i) {
      const auto got = space.reduce(raw_vec(n, static_cast<std::int32_t>(i), -1));
      const auto want = i == n ? closed_vec(RElement(RBasisIndex::x(0), 1))
                               : SparseVec{};
      if (got != want && li_ok) {
        li_ok = false;
        li_bad = format_monomial(n, static_cast<std::int32_t>(i), -1, 0, 0, false);
      }
    }
  b.check(li_ok, "y^n * (e0*x0 + ... + en*xn) = en*x0 for n <= " +
                     std::to_string(li),
          li_bad);

  const auto x0 = closed_vec(RElement(RBasisIndex::x(0), 1));
  b.check(!space.relations().contains(x0), "x0 is not in the relation span",
          "x0");
  b.witness("x0");
  b.inventory("relation span rank " + std::to_string(space.relations().rank()) +
              " over " + std::to_string(basis.size()) + " raw monomials");
  return b.take();
}

ClaimReport verify_ann(const RingId &ring, std::uint32_t max_dt,
                       std::uint32_t max_du, const Config &cfg) {
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  if (max_dt + 2 > w.mx)
    throw WindowTooSmall("annihilators up to t^" + std::to_string(max_dt) +
                         " need mx >= " + std::to_string(max_dt + 2));
  if (max_du > w.du)
    throw WindowTooSmall("annihilators up to u^" + std::to_string(max_du) +
                         " need du >= " + std::to_string(max_du));
  Builder b(ring.kind == RingId::Kind::E2 ? ClaimId::AnnTU : ClaimId::AnnT,
            ring.name());
  if (ring.kind == RingId::Kind::E1)
    b.param("m", ring.m);
  b.param("max_dt", max_dt);
  b.param("max_du", max_du);
  b.param("mx", w.mx);

  const auto space = oracle::r_slice(pres, w);
  std::size_t checked = 0;
  for (std::uint32_t du = 0; du <= max_du; ++du)
    for (std::uint32_t dt = 0; dt <= max_dt; ++dt) {
      const auto got = oracle::annihilator_oracle(pres, dt, du, w);
      std::vector<SparseVec> vecs;
      for (auto idx : ann_formula(ring, dt, du).up_to(w.mx))
        vecs.push_back(space->vectorize(mono(ring, {}, idx)));
      const auto want = Subspace::span(space->basis().size(), vecs);
      ++checked;
      const auto label = "Ann(" + mono_text(dt, du) + ")";
      const auto text = span_text(*space, got);
      if (!(got == want))
        b.check(false, label + " = " + text,
                label + ": oracle " + text + ", closed form " +
                    span_text(*space, want));
      else
        b.inventory(label + " = " + text);
      if ((ring.kind == RingId::Kind::E2 && dt == 2 && du == 1) ||
          (ring.kind != RingId::Kind::E2 && dt == 3 && du == 0))
        b.witness(label + " = " + text);
    }
  b.inventory(std::to_string(checked) + " annihilators compared");
  return b.take();
}

ClaimReport verify_ann_t(const Config &cfg) {
  const auto ring = RingId::e1(cfg.m);
  const auto w = cfg.window(ring);
  if (w.dt < ring.m)
    throw WindowTooSmall("window dt=" + std::to_string(w.dt) +
                         " holds no nonzero annihilator; need dt >= " +
                         std::to_string(ring.m));
  return verify_ann(ring, std::min(w.dt + 2, w.mx - 2), 0, cfg);
}

ClaimReport verify_ann_tu(const Config &cfg) {
  const auto ring = RingId::e2();
  const auto w = cfg.window(ring);
  if (w.du < 1)
    throw WindowTooSmall("the u-direction needs du >= 1");
  return verify_ann(ring, w.dt, std::min<std::uint32_t>(w.du, 3), cfg);
}

namespace {

/// Kernel of (t - y) or of a whole system on a window; rows are checked to
/// have no degree-(0,0) part and to pass the recurrence replay.
void check_solutions_in_ideal(Builder &b, const WindowSpace &domain,
                              const Subspace &kernel, const std::string &what) {
  b.inventory(what + ": rank " + std::to_string(kernel.rank()));
  std::optional<std::string> counter;
  for (const auto &r : kernel.rows())
    if (has_degree_zero_part(domain, r)) {
      counter = domain.format(r);
      break;
    }
  b.check(!counter, "every basis vector of " + what +
                        " has zero degree-(0,0) component",
          counter.value_or(""));

  std::optional<std::string> replay_bad;
  for (const auto &r : kernel.rows()) {
    if (auto why = replay_recurrence(domain.to_graded(r))) {
      replay_bad = domain.format(r) + " (" + *why + ")";
      break;
    }
  }
  b.check(!replay_bad,
          "recurrence c0*y = 0, (ci - c(i+1)*y)*t^(i+1) = 0, cN*t^(N+1) = 0 "
          "with ci in k*x0 + ... + k*x(i-1) + d0*xi replayed on " +
              std::to_string(kernel.rank()) + " vectors",
          replay_bad.value_or(""));
  if (touches_boundary(domain, kernel))
    b.inconclusive(what + " reaches x-index or y-exponent mx=" +
                   std::to_string(domain.mx()));
  else
    b.inventory("boundary: clean interior");
}

} // namespace

ClaimReport verify_essential(const Config &cfg) {
  const auto ring = RingId::e1(cfg.m);
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  Builder b(ClaimId::Essential, ring.name());
  b.param("m", ring.m);
  b.window(w);
  b.notes(kFlatnessNote);

  auto domain = WindowSpace::make(pres, w);
  const auto K = oracle::kernel(oracle::mul_map(pres, t_minus_y(ring), domain));
  check_solutions_in_ideal(b, *domain, K, "kernel of (t - y)");

  if (ring.m - 1 <= w.dt) {
    const auto x0t = mono(ring, {ring.m - 1, 0}, RBasisIndex::x(0));
    const auto text = print_element(x0t);
    b.check(K.contains(domain->vectorize(x0t)),
            text + " lies in the kernel and in t*A0", text);
    b.witness(text);
  }
  return b.take();
}

ClaimReport verify_kernel_I0(const Config &cfg) {
  const auto ring = RingId::e2();
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  Builder b(ClaimId::KernelI0, ring.name());
  b.window(w);
  b.notes(kFlatnessNote);

  auto domain = WindowSpace::make(pres, w);
  const auto K = oracle::kernel(oracle::mul_map(pres, t_minus_y(ring), domain));
  check_solutions_in_ideal(b, *domain, K, "kernel of (t - y)");
  const auto x0t = mono(ring, {1, 0}, RBasisIndex::x(0));
  b.check(K.contains(domain->vectorize(x0t)), "x0*t lies in the kernel and in I0",
          "x0*t");
  b.witness("x0*t");
  return b.take();
}

std::optional<std::uint32_t>
torsion_killing_exponent(const Presentation &pres, const Window &w) {
  const auto &ring = pres.ring;
  const auto K = oracle::default_torsion_exponent(w);
  auto domain = WindowSpace::make(pres, w);
  std::vector<oracle::LinMap> maps{oracle::mul_map(
      pres, mono(ring, {K, 0}, RBasisIndex::one()), domain)};
  if (ring.has_u())
    maps.push_back(
        oracle::mul_map(pres, mono(ring, {0, K}, RBasisIndex::one()), domain));
  const auto T = oracle::kernel(maps);
  if (T.is_zero())
    return 0;
  for (std::uint32_t l = 1; l <= 2 * K; ++l) {
    bool kills = true;
    for (std::uint32_t a = 0; a <= l && kills; ++a) {
      const Degree d{a, l - a};
      if (d.du > 0 && !ring.has_u())
        continue;
      const auto map =
          oracle::mul_map(pres, mono(ring, d, RBasisIndex::one()), domain);
      for (const auto &r : T.rows())
        if (!oracle::apply(map, r).empty()) {
          kills = false;
          break;
        }
    }
    if (kills)
      return l;
  }
  return std::nullopt;
}

ClaimReport verify_bounded_E2(const Config &cfg) {
  const auto ring = RingId::e2();
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  Builder b(ClaimId::BoundedE2, ring.name());
  b.window(w);
  const auto K = oracle::default_torsion_exponent(w);
  b.param("torsion_exponent", K);
  b.notes(kFlatnessNote);

  auto domain = WindowSpace::make(pres, w);
  const auto T = oracle::kernel(std::vector<oracle::LinMap>{
      oracle::mul_map(pres, mono(ring, {K, 0}, RBasisIndex::one()), domain),
      oracle::mul_map(pres, mono(ring, {0, K}, RBasisIndex::one()), domain)});
  b.inventory("torsion subspace T (killed by t^" + std::to_string(K) +
              " and u^" + std::to_string(K) + "): rank " +
              std::to_string(T.rank()));

  for (const Degree d : {Degree{2, 0}, Degree{1, 1}, Degree{0, 2}}) {
    const auto g = mono(ring, d, RBasisIndex::one());
    const auto map = oracle::mul_map(pres, g, domain);
    std::optional<std::string> counter;
    for (const auto &r : T.rows())
      if (!oracle::apply(map, r).empty()) {
        counter = domain->format(r);
        break;
      }
    b.check(!counter, print_element(g) + " * T = 0", counter.value_or(""));
  }

  const auto x0 = mono(ring, {}, RBasisIndex::x(0));
  const auto u = mono(ring, {0, 1}, RBasisIndex::one());
  b.check(T.contains(domain->vectorize(x0)), "x0 lies in T", "x0");
  b.check(oracle::apply(oracle::mul_map(pres, u, domain), domain->vectorize(x0))
                  .empty() &&
              (u * x0).is_zero(),
          "u*x0 = 0 (oracle and closed form)", "u*x0");
  b.check(!T.contains(domain->vectorize(GradedPoly::constant(ring, 1))),
          "1 is not in T", "1");
  b.witness("x0");
  b.witness("u*x0 = 0");
  return b.take();
}

ClaimReport verify_nwkpr(const Config &cfg) {
  const auto ring = RingId::e2();
  const auto kw = cfg.koszul_window(ring);
  const auto pres = cfg.presentation(ring);
  const auto max_stage = cfg.max_stage;
  Builder b(ClaimId::Nwkpr, ring.name());
  b.param("max_stage", max_stage);
  b.window(kw);
  b.notes("Pro-zero verdicts are relative to the window; a nonzero "
          "transition with a replayed witness is conclusive.");

  const auto sys = koszul::HomologySystem::parse("H0(u;H1(t))");
  const auto rep = koszul::pro_zero_test(pres, sys, max_stage, kw);
  b.inventory("system " + sys.str() + ": " + koszul::verdict_name(rep.verdict));
  if (rep.verdict == koszul::Verdict::ProZeroUpToWindow)
    b.check(false, sys.str() + " is not pro-zero",
            sys.str() + " pro-zero with gap " +
                std::to_string(rep.uniform_gap.value_or(0)));
  else if (rep.verdict == koszul::Verdict::Inconclusive)
    b.inconclusive("no target stage with every transition nonzero");
  else
    b.inventory("not pro-zero: witnessed");

  // The chain x_(nu-2) in H1(t^nu), mapped to stage 2.
  const auto ctx = koszul::Context::make(pres, kw);
  const auto target = koszul::build_stage(ctx, sys, 2);
  for (std::uint32_t nu = 3; nu <= max_stage; ++nu) {
    const auto src = koszul::build_stage(ctx, sys, nu);
    const auto x = mono(ring, {}, RBasisIndex::x(nu - 2));
    const auto v = src.module->vectorize({x});
    const auto img = koszul::transition_map(src, target).apply(v);
    const bool ok = src.homology.cycles.contains(v) &&
                    target.homology.is_nonzero_class(img);
    const auto label = "x" + std::to_string(nu - 2);
    b.check(ok,
            "stage " + std::to_string(nu) + " -> 2: " + label + " maps to " +
                target.module->format(img) + ", nonzero modulo u^2*H1(t^2)",
            label + " at stage " + std::to_string(nu));
    const auto *rec = rep.find(nu, 2);
    if (rec && !rec->zero) {
      b.check(rec->replay_nonzero,
              "replay of the stage " + std::to_string(nu) +
                  " witness in the enlarged window",
              rec->witness_text);
      b.witness("stage " + std::to_string(nu) + " -> 2: " + rec->witness_text +
                " |-> " + rec->image_text);
    }
  }

  for (std::uint32_t i = 2; i + 2 <= max_stage; ++i) {
    const auto ses = koszul::ses_row_check(ctx, koszul::Var::T, koszul::Var::U, i);
    b.check(ses.exact(),
            "exact row at stage " + std::to_string(i) + " (dims " +
                std::to_string(ses.dim_left) + " + " +
                std::to_string(ses.dim_right) + " = " +
                std::to_string(ses.dim_middle) + ")",
            "row at stage " + std::to_string(i));
  }

  // Positive control: the sequence (t, t) over CTRL.
  const auto ctrl = RingId::ctrl();
  const auto csys = koszul::HomologySystem::parse("H0(t;H1(t))");
  const auto crep = koszul::pro_zero_test(cfg.presentation(ctrl), csys, max_stage,
                                          cfg.koszul_window(ctrl));
  b.check(crep.verdict == koszul::Verdict::ProZeroUpToWindow,
          "control CTRL " + csys.str() + ": " +
              koszul::verdict_name(crep.verdict) +
              (crep.uniform_gap ? " (gap " + std::to_string(*crep.uniform_gap) + ")"
                                : ""),
          "CTRL control not pro-zero");
  return b.take();
}

ClaimReport demo_gs(const Config &cfg) {
  const auto ring = RingId::gs();
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  const auto N = cfg.prec;
  if (N == 0)
    throw InvalidParameter("precision must be at least 1");
  Builder b(ClaimId::GsDemo, ring.name());
  b.window(w);
  b.param("N", N);

  auto domain = WindowSpace::make(pres, w);
  const auto K = oracle::kernel(oracle::mul_map(pres, t_minus_y(ring), domain));
  b.check(K.is_zero(), "kernel of (t - y) on the window is 0",
          K.is_zero() ? "" : domain->format(K.rows().front()));

  // Backward substitution: no t-torsion forces c_N = 0, then c_i = c_(i+1) y.
  bool no_torsion = true;
  for (std::uint32_t i = 0; i <= w.dt + 1; ++i)
    no_torsion = no_torsion && ann_formula(ring, i, 0).empty();
  std::vector<std::string> y_kernel;
  for (std::uint32_t i = 0; i <= w.mx; ++i) {
    if (r_mul(RElement(RBasisIndex::x(i), 1), RElement(RBasisIndex::y(1), 1))
            .is_zero())
      y_kernel.push_back("x" + std::to_string(i));
    if (r_mul(RElement(RBasisIndex::y(i), 1), RElement(RBasisIndex::y(1), 1))
            .is_zero())
      y_kernel.push_back(format_monomial(i, -1, -1, 0, 0, false));
  }
  b.check(no_torsion && y_kernel == std::vector<std::string>{"x0"},
          "backward substitution: Ann(t^i) = 0 for i <= " +
              std::to_string(w.dt + 1) +
              " forces cN = 0, and Ann_R(y) = k*x0 on the basis");

  const auto alpha = alpha_hat(ring, N);
  const auto res = apply_system(SystemId::for_ring(ring), alpha);
  b.check(res.front().value.is_zero(),
          "f1(alpha_hat) = 0 modulo t^" + std::to_string(res.front().value.precision()),
          "f1 residue " + print_element(res.front().value.body()));
  const auto op = oracle_product(pres, alpha.body(), t_minus_y(ring), w.mx, N);
  b.check(op.image.empty(), "oracle: (t - y)*alpha_hat = 0 modulo t^" +
                                std::to_string(N),
          op.codomain->format(op.image));
  const auto c0 = alpha.body().component({0, 0});
  b.check(c0 == RElement(RBasisIndex::x(0), 1),
          "constant term of alpha_hat is x0 != 0, so alpha_hat is not "
          "congruent to the only window solution 0 modulo t");
  b.witness("alpha_hat = " + print_element(alpha.body()));
  b.witness("kernel of (t - y): 0");
  return b.take();
}

namespace {

ClaimReport approx_failure(ClaimId id, const RingId &ring,
                           const SystemId &system, const Config &cfg) {
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  const auto N = cfg.prec;
  if (N == 0)
    throw InvalidParameter("precision must be at least 1");
  if (N > w.mx + 1)
    throw WindowTooSmall("alpha_hat with N=" + std::to_string(N) +
                         " needs mx >= " + std::to_string(N - 1));
  Builder b(id, ring.name());
  if (ring.kind == RingId::Kind::E1) {
    b.param("m", ring.m);
    b.param("n", system.n);
  }
  b.window(w);
  b.param("N", N);
  b.notes(kFlatnessNote);

  const auto alpha = alpha_hat(ring, N);
  const auto gens = system.coefficients();
  const auto residues = apply_system(system, alpha);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto &r = residues[k];
    const bool exact = k > 0;
    const auto prec_text = " modulo (t,u)^" + std::to_string(r.value.precision());
    b.check(exact ? r.exact_zero : r.value.is_zero(),
            r.label + "(alpha_hat) = 0" + (exact ? " exactly" : prec_text),
            r.label + " residue " + print_element(r.value.body()));
    const auto op = oracle_product(pres, alpha.body(), gens[k], w.mx,
                                   exact ? std::nullopt
                                         : std::optional(r.value.precision()));
    b.check(op.image.empty(),
            "oracle: " + r.label + "(alpha_hat) = 0" +
                (exact ? " exactly" : prec_text),
            "oracle " + r.label + " residue " + op.codomain->format(op.image));
  }

  auto domain = WindowSpace::make(pres, w);
  std::vector<oracle::LinMap> maps;
  for (const auto &g : gens)
    maps.push_back(oracle::mul_map(pres, g, domain));
  const auto S = oracle::kernel(maps);
  b.inventory("window solutions of " + system.name() + ": rank " +
              std::to_string(S.rank()));
  std::optional<std::string> counter;
  for (const auto &r : S.rows())
    if (has_degree_zero_part(*domain, r)) {
      counter = domain->format(r);
      break;
    }
  b.check(!counter, "every window solution has zero degree-(0,0) component",
          counter.value_or(""));
  if (touches_boundary(*domain, S))
    b.inconclusive("a solution reaches x-index or y-exponent mx");

  const auto x0 = domain->vectorize(mono(ring, {}, RBasisIndex::x(0)));
  b.check(alpha.body().component({0, 0}) == RElement(RBasisIndex::x(0), 1) &&
              !domain->reduce(x0).empty(),
          "degree-(0,0) component of alpha_hat is x0 != 0 (closed form and "
          "oracle): no window solution is congruent to alpha_hat in degree 0");
  b.witness("alpha_hat = " + print_element(alpha.body()));
  b.witness("obstruction: x0");
  if (!S.is_zero())
    b.witness("solution: " + domain->format(S.rows().front()));
  return b.take();
}

} // namespace

ClaimReport demo_approx_failure_E1(const Config &cfg) {
  const auto ring = RingId::e1(cfg.m);
  return approx_failure(ClaimId::ApproxFailE1, ring,
                        SystemId::for_ring(ring, cfg.n), cfg);
}

ClaimReport demo_approx_failure_E2(const Config &cfg) {
  const auto ring = RingId::e2();
  return approx_failure(ClaimId::ApproxFailE2, ring, SystemId::for_ring(ring),
                        cfg);
}

ClaimReport verify_xi_witnesses(const Config &cfg) {
  const auto ring = RingId::e1(cfg.m);
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  const auto n_max = cfg.xi_max;
  if (n_max == 0)
    throw InvalidParameter("need at least one witness (n >= 1)");
  if (n_max + 3 > w.mx)
    throw WindowTooSmall("witnesses up to n=" + std::to_string(n_max) +
                         " need mx >= " + std::to_string(n_max + 3));
  Builder b(ClaimId::XiWitness, ring.name());
  b.param("m", ring.m);
  b.param("n_max", n_max);
  b.param("mx", w.mx);

  const auto space = oracle::r_slice(pres, w);
  const auto first = std::max<std::uint32_t>(1, ring.m - 1);
  for (std::uint32_t n = first; n <= n_max; ++n) {
    const auto xi = mono(ring, {}, RBasisIndex::x(n + 1 - ring.m));
    const auto label = print_element(xi);
    const auto tn = mono(ring, {n, 0}, RBasisIndex::one());
    const auto tn1 = mono(ring, {n + 1, 0}, RBasisIndex::one());
    const auto v = space->vectorize(xi);
    const bool closed = !(tn * xi).is_zero() && (tn1 * xi).is_zero();
    const bool orc = !oracle::annihilator_oracle(pres, n, 0, w).contains(v) &&
                     oracle::annihilator_oracle(pres, n + 1, 0, w).contains(v);
    b.check(closed && orc,
            "n=" + std::to_string(n) + ": " + mono_text(n, 0) + "*" + label +
                " != 0, " + mono_text(n + 1, 0) + "*" + label +
                " = 0 (closed form and oracle)",
            "xi_" + std::to_string(n) + " = " + label);
    b.witness("xi_" + std::to_string(n) + " = " + label);
  }

  std::vector<std::size_t> ranks;
  for (std::uint32_t i = first; i <= n_max + 1; ++i)
    ranks.push_back(oracle::annihilator_oracle(pres, i, 0, w).rank());
  bool strict = true;
  for (std::size_t i = 1; i < ranks.size(); ++i)
    strict = strict && ranks[i] > ranks[i - 1];
  std::string chain;
  for (auto r : ranks)
    chain += (chain.empty() ? "" : " < ") + std::to_string(r);
  b.check(strict, "dim Ann(t^i) strictly increasing for i = " +
                      std::to_string(first) + ".." + std::to_string(n_max + 1) +
                      ": " + chain);
  b.inventory("unbounded t-torsion within the window: bounded torsion fails");
  return b.take();
}

ClaimReport verify_remark_wpr(const Config &cfg) {
  std::vector<RingId> rings{RingId::e1(2), RingId::ctrl(), RingId::gs()};
  if (cfg.m != 2)
    rings.push_back(RingId::e1(cfg.m));
  std::string names;
  for (const auto &r : rings)
    names += (names.empty() ? "" : ",") + r.name();
  Builder b(ClaimId::RemarkWpr, names);
  b.param("max_stage", cfg.max_stage);
  b.notes("Instance-level table only; the general equivalence is not "
          "asserted.");

  const auto sys = koszul::HomologySystem::parse("H1(t)");
  for (const auto &ring : rings) {
    const auto pres = cfg.presentation(ring);
    const auto w = cfg.window(ring);
    const auto small = torsion_killing_exponent(pres, w);
    const auto large = torsion_killing_exponent(pres, grown(ring, w, 2));
    const bool torsion_free = small && *small == 0;
    const bool bounded = small && large && *small == *large;
    const auto rep =
        koszul::pro_zero_test(pres, sys, cfg.max_stage, cfg.koszul_window(ring));
    const bool pro_zero = rep.verdict == koszul::Verdict::ProZeroUpToWindow;

    const std::string torsion =
        torsion_free ? "torsion-free"
        : bounded    ? "bounded (I^" + std::to_string(*small) + " kills it)"
                     : "unbounded (I^" + std::to_string(small.value_or(0)) +
                        " then I^" + std::to_string(large.value_or(0)) +
                        " needed as the window grows)";
    const auto row = ring.name() + ": " + torsion + ", " + sys.str() + " " +
                     koszul::verdict_name(rep.verdict);
    if (rep.verdict == koszul::Verdict::Inconclusive) {
      b.inconclusive(row);
      continue;
    }
    const bool expect_bounded = ring.kind != RingId::Kind::E1;
    b.check(bounded == pro_zero && bounded == expect_bounded, row,
            ring.name() + " row: " + torsion + " vs " +
                koszul::verdict_name(rep.verdict));
    b.witness(row);
  }
  return b.take();
}

ClaimReport run_claim(ClaimId id, const Config &cfg) {
  switch (id) {
  case ClaimId::Basis:
    return verify_basis(cfg);
  case ClaimId::AnnT:
    return verify_ann_t(cfg);
  case ClaimId::Essential:
    return verify_essential(cfg);
  case ClaimId::AnnTU:
    return verify_ann_tu(cfg);
  case ClaimId::KernelI0:
    return verify_kernel_I0(cfg);
  case ClaimId::BoundedE2:
    return verify_bounded_E2(cfg);
  case ClaimId::Nwkpr:
    return verify_nwkpr(cfg);
  case ClaimId::GsDemo:
    return demo_gs(cfg);
  case ClaimId::ApproxFailE1:
    return demo_approx_failure_E1(cfg);
  case ClaimId::ApproxFailE2:
    return demo_approx_failure_E2(cfg);
  case ClaimId::XiWitness:
    return verify_xi_witnesses(cfg);
  case ClaimId::RemarkWpr:
    return verify_remark_wpr(cfg);
  }
  throw InvalidParameter("unknown claim");
}

} // namespace elkik::claims

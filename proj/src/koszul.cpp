#include "elkik/koszul.hpp"

#include "elkik/errors.hpp"
#include "elkik/print.hpp"

#include <algorithm>
#include <cctype>

namespace elkik::koszul {

using oracle::Presentation;
using oracle::SpacePtr;
using oracle::Window;
using oracle::WindowSpace;

std::string var_name(Var v) { return v == Var::T ? "t" : "u"; }

Degree var_degree(Var v, std::uint32_t e) {
  return v == Var::T ? Degree{e, 0} : Degree{0, e};
}

GradedPoly var_power(const RingId &ring, Var v, std::uint32_t e) {
  if (v == Var::U && !ring.has_u())
    throw InvalidParameter("no u in " + ring.name());
  if (!ring.has_t())
    throw UnsupportedRing("no t in " + ring.name());
  return GradedPoly::monomial(ring, var_degree(v, e), RBasisIndex::one());
}

namespace {

Degree operator+(Degree a, Degree b) { return {a.dt + b.dt, a.du + b.du}; }

bool within(Degree d, const Window &w) { return d.dt <= w.dt && d.du <= w.du; }

Var parse_var(std::string_view s, std::size_t at) {
  if (s == "t")
    return Var::T;
  if (s == "u")
    return Var::U;
  throw ParseError("expected 't' or 'u'", at);
}

} // namespace

HomologySystem HomologySystem::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += c;
  auto expect_suffix = [&](std::string_view prefix) {
    return s.size() > prefix.size() + 1 && s.starts_with(prefix) &&
           s.back() == ')';
  };
  if (expect_suffix("H0(")) {
    // H0(b;H1(a))
    const auto semi = s.find(';');
    if (semi == std::string::npos)
      throw ParseError("expected ';'", s.size());
    const auto b = parse_var(std::string_view(s).substr(3, semi - 3), 3);
    const auto inner = std::string_view(s).substr(semi + 1);
    if (!inner.starts_with("H1(") || !inner.ends_with("))"))
      throw ParseError("expected 'H1(<var>))'", semi + 1);
    const auto a = parse_var(inner.substr(3, inner.size() - 5), semi + 4);
    return {Kind::H0OfH1, a, b};
  }
  if (expect_suffix("H1(")) {
    const auto body = std::string_view(s).substr(3, s.size() - 4);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos)
      return {Kind::H1Single, parse_var(body, 3), Var::U};
    return {Kind::H1Pair, parse_var(body.substr(0, comma), 3),
            parse_var(body.substr(comma + 1), 4 + comma)};
  }
  throw ParseError("unknown homology system '" + std::string(text) + "'", 0);
}

std::string HomologySystem::str() const {
  switch (kind) {
  case Kind::H1Single:
    return "H1(" + var_name(a) + ")";
  case Kind::H0OfH1:
    return "H0(" + var_name(b) + ";H1(" + var_name(a) + "))";
  case Kind::H1Pair:
    return "H1(" + var_name(a) + "," + var_name(b) + ")";
  }
  return {};
}

void HomologySystem::check(const RingId &ring) const {
  if (!ring.has_t())
    throw UnsupportedRing("Koszul systems need t; " + ring.name() +
                          " has none");
  const bool uses_b = kind != Kind::H1Single;
  if ((a == Var::U || (uses_b && b == Var::U)) && !ring.has_u())
    throw InvalidParameter("system " + str() + " uses u, absent from " +
                           ring.name());
}

Context Context::make(const Presentation &pres, const Window &window) {
  oracle::check_margin(pres.ring, window);
  return {pres, window, WindowSpace::make(pres, window)};
}

FreeModule::FreeModule(SpacePtr ring, Window window, std::vector<Degree> shifts)
    : ring_(std::move(ring)), window_(window), shifts_(std::move(shifts)),
      n_(ring_->basis().size()) {
  for (std::size_t c = 0; c < shifts_.size(); ++c)
    for (auto k : ring_->standard())
      if (fits(c, ring_->basis().at(k).degree()))
        standard_.push_back(coord(c, k));
}

Degree FreeModule::complex_degree(std::size_t coord) const {
  return ring_->basis().at(ring_index(coord)).degree() +
         shifts_[comp_of(coord)];
}

bool FreeModule::fits(std::size_t comp, Degree ring_degree) const {
  return within(ring_degree + shifts_[comp], window_);
}

std::vector<std::size_t> FreeModule::standard_of(std::size_t comp) const {
  std::vector<std::size_t> out;
  for (auto k : standard_)
    if (comp_of(k) == comp)
      out.push_back(k);
  return out;
}

SparseVec FreeModule::component(const SparseVec &v, std::size_t comp) const {
  SparseVec out;
  for (auto it = v.lower_bound(comp * n_);
       it != v.end() && it->first < (comp + 1) * n_; ++it)
    out.emplace(it->first - comp * n_, it->second);
  return out;
}

SparseVec FreeModule::embed(const SparseVec &ring_vec, std::size_t comp) const {
  SparseVec out;
  for (const auto &[k, c] : ring_vec) {
    if (!fits(comp, ring_->basis().at(k).degree()))
      throw WindowTooSmall("component entry leaves the complex window " +
                           window_.str());
    out.emplace_hint(out.end(), coord(comp, k), c);
  }
  return out;
}

std::vector<GradedPoly> FreeModule::to_graded(const SparseVec &v) const {
  std::vector<GradedPoly> out;
  for (std::size_t c = 0; c < rank(); ++c)
    out.push_back(ring_->to_graded(component(v, c)));
  return out;
}

SparseVec FreeModule::vectorize(const std::vector<GradedPoly> &parts) const {
  if (parts.size() != rank())
    throw DimensionMismatch("expected " + std::to_string(rank()) +
                            " components");
  SparseVec out;
  for (std::size_t c = 0; c < rank(); ++c)
    for (const auto &[k, s] : embed(ring_->vectorize(parts[c]), c))
      out.emplace(k, s);
  return out;
}

std::string FreeModule::format(const SparseVec &v) const {
  if (rank() == 1)
    return ring_->format(component(v, 0));
  std::string s = "(";
  for (std::size_t c = 0; c < rank(); ++c) {
    if (c)
      s += ", ";
    s += ring_->format(component(v, c));
  }
  return s + ")";
}

SparseVec ModuleMap::apply(const SparseVec &v) const {
  SparseVec out;
  for (std::size_t c = 0; c < from->rank(); ++c) {
    const auto part = from->component(v, c);
    if (part.empty())
      continue;
    for (std::size_t r = 0; r < to->rank(); ++r) {
      const auto &g = entries[r][c];
      if (!g)
        continue;
      const auto prod = oracle::multiply(from->ring(), part, *g, to->ring());
      for (const auto &[k, s] : to->embed(prod, r))
        add_entry(out, k, s);
    }
  }
  return out;
}

Subspace ModuleMap::image() const {
  std::vector<SparseVec> vecs;
  vecs.reserve(from->standard().size());
  for (auto k : from->standard()) {
    if (!within(from->complex_degree(k) + degree, to->window()))
      continue;
    vecs.push_back(apply(SparseVec{{k, Scalar(1)}}));
  }
  return Subspace::span(to->dim(), vecs);
}

Subspace ModuleMap::image(const Subspace &s) const {
  std::vector<SparseVec> vecs;
  for (const auto &r : s.rows()) {
    if (!within(vector_degree(*from, r) + degree, to->window()))
      continue;
    vecs.push_back(apply(r));
  }
  return Subspace::span(to->dim(), vecs);
}

Subspace ModuleMap::kernel(const Subspace *modulo) const {
  const auto &cols = from->standard();
  std::vector<SparseVec> images;
  images.reserve(cols.size());
  for (auto k : cols)
    images.push_back(apply(SparseVec{{k, Scalar(1)}}));
  const auto positional = kernel_of(images, to->dim(), modulo);
  std::vector<SparseVec> vecs;
  for (const auto &r : positional.rows()) {
    SparseVec v;
    for (const auto &[pos, c] : r)
      v.emplace(cols[pos], c);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(from->dim(), vecs);
}

Subspace Homology::representatives() const {
  std::vector<SparseVec> vecs;
  for (const auto &r : cycles.rows()) {
    auto v = boundaries.reduce(r);
    if (!v.empty())
      vecs.push_back(std::move(v));
  }
  return Subspace::span(cycles.dim(), vecs);
}

Degree vector_degree(const FreeModule &m, const SparseVec &v) {
  if (v.empty())
    return {};
  const auto d = m.complex_degree(v.begin()->first);
  for (const auto &[k, c] : v)
    if (m.complex_degree(k) != d)
      throw PreconditionError("vector is not homogeneous");
  return d;
}

namespace {

ModulePtr module(const Context &ctx, std::vector<Degree> shifts) {
  return std::make_shared<const FreeModule>(ctx.ring, ctx.window,
                                            std::move(shifts));
}

using Entry = std::optional<GradedPoly>;

Subspace everything(const FreeModule &m) {
  std::vector<SparseVec> vecs;
  for (auto k : m.standard())
    vecs.push_back({{k, Scalar(1)}});
  return Subspace::span(m.dim(), vecs);
}

Subspace embed_rows(const Subspace &s, const FreeModule &from,
                    std::size_t from_comp, const FreeModule &to,
                    std::size_t to_comp) {
  std::vector<SparseVec> vecs;
  for (const auto &r : s.rows())
    vecs.push_back(to.embed(from.component(r, from_comp), to_comp));
  return Subspace::span(to.dim(), vecs);
}

Subspace project_rows(const Subspace &s, const FreeModule &m,
                      std::size_t comp) {
  std::vector<SparseVec> vecs;
  for (const auto &r : s.rows())
    vecs.push_back(m.embed(m.component(r, comp), comp));
  return Subspace::span(m.dim(), vecs);
}

} // namespace

SingleStage koszul_single(const Context &ctx, Var a, std::uint32_t i) {
  const auto &ring = ctx.pres.ring;
  auto k0 = module(ctx, {{0, 0}});
  auto k1 = module(ctx, {var_degree(a, i)});
  ModuleMap d1{k1, k0, {{Entry(var_power(ring, a, i))}}};
  Homology h1{d1.kernel(), Subspace(k1->dim())};
  Homology h0{everything(*k0), d1.image()};
  return {a, i, k0, k1, std::move(d1), std::move(h0), std::move(h1)};
}

Subspace koszul_h1_single(const Context &ctx, Var a, std::uint32_t i) {
  return koszul_single(ctx, a, i).h1.cycles;
}

KoszulStage koszul_pair(const Context &ctx, Var a, Var b, std::uint32_t i) {
  const auto &ring = ctx.pres.ring;
  const auto da = var_degree(a, i);
  const auto db = var_degree(b, i);
  auto k0 = module(ctx, {{0, 0}});
  auto k1 = module(ctx, {da, db});
  auto k2 = module(ctx, {da + db});
  const auto ai = var_power(ring, a, i);
  const auto bi = var_power(ring, b, i);
  ModuleMap d1{k1, k0, {{Entry(ai), Entry(bi)}}};
  ModuleMap d2{k2, k1, {{Entry(bi)}, {Entry(g_neg(ai))}}};

  bool dd = true;
  for (auto k : k2->standard())
    if (!d1.apply(d2.apply(SparseVec{{k, Scalar(1)}})).empty()) {
      dd = false;
      break;
    }

  auto z1 = d1.kernel();
  auto b1 = d2.image();
  auto z2 = d2.kernel();
  Homology h0{everything(*k0), d1.image()};
  Homology h1{std::move(z1), std::move(b1)};
  Homology h2{std::move(z2), Subspace(k2->dim())};
  return {ring,          a,  b,  i,  ctx.window,    k0,           k1,
          k2,            std::move(d1), std::move(d2), std::move(h0),
          std::move(h1), std::move(h2), dd};
}

H0OfH1 h0_of_h1(const Context &ctx, Var a, Var b, std::uint32_t i) {
  auto single = koszul_single(ctx, a, i);
  const auto &m = single.k1;
  ModuleMap bmul{m, m, {{Entry(var_power(ctx.pres.ring, b, i))}},
                 var_degree(b, i)};
  auto bound = bmul.image(single.h1.cycles);
  return {m, Homology{std::move(single.h1.cycles), std::move(bound)}};
}

SesReport ses_row_check(const Context &ctx, Var a, Var b, std::uint32_t i) {
  const auto &ring = ctx.pres.ring;
  const auto pair = koszul_pair(ctx, a, b, i);
  const auto left = h0_of_h1(ctx, a, b, i);
  const auto &k1 = *pair.k1;
  const auto ai = var_power(ring, a, i);
  const auto bi = var_power(ring, b, i);

  // Left term pushed into K1 as (z, 0).
  const auto at0 = embed_rows(left.homology.cycles, *left.module, 0, k1, 0);
  const auto bat0 = embed_rows(left.homology.boundaries, *left.module, 0, k1, 0);

  // Right term H1(b^i; A / a^i A) on the second K1 component.
  auto e2 = module(ctx, {var_degree(b, i)});
  auto e1 = module(ctx, {var_degree(a, i)});
  const ModuleMap a_into_k0{e1, pair.k0, {{Entry(ai)}}};
  const ModuleMap b_into_k0{e2, pair.k0, {{Entry(bi)}}};
  const ModuleMap a_into_e2{pair.k2, e2, {{Entry(ai)}}};
  const auto a_image = a_into_k0.image();
  const auto s = embed_rows(b_into_k0.kernel(&a_image), *e2, 0, k1, 1);
  const auto t = embed_rows(a_into_e2.image(), *e2, 0, k1, 1);

  const auto &z1 = pair.h1.cycles;
  const auto &b1 = pair.h1.boundaries;

  SesReport rep;
  rep.stage = i;
  rep.injective = at0.intersect(b1) == bat0;
  Subspace first_comp(k1.dim());
  {
    std::vector<SparseVec> vecs;
    for (auto k : k1.standard_of(0))
      vecs.push_back({{k, Scalar(1)}});
    first_comp = Subspace::span(k1.dim(), vecs);
  }
  rep.middle_exact = z1.intersect(first_comp.sum(t)) == at0.sum(b1);
  rep.surjective = s.sum(t) == project_rows(z1, k1, 1).sum(t);
  rep.dim_left = left.homology.dim();
  rep.dim_middle = pair.h1.dim();
  rep.dim_right = s.sum(t).rank() - t.rank();
  rep.dims_match = rep.dim_left + rep.dim_right == rep.dim_middle;
  return rep;
}

SystemStage build_stage(const Context &ctx, const HomologySystem &sys,
                        std::uint32_t i) {
  sys.check(ctx.pres.ring);
  if (i == 0)
    throw PreconditionError("stages start at 1");
  switch (sys.kind) {
  case HomologySystem::Kind::H1Single: {
    auto st = koszul_single(ctx, sys.a, i);
    return {sys, i, st.k1, std::move(st.h1)};
  }
  case HomologySystem::Kind::H0OfH1: {
    auto h = h0_of_h1(ctx, sys.a, sys.b, i);
    return {sys, i, h.module, std::move(h.homology)};
  }
  case HomologySystem::Kind::H1Pair: {
    auto st = koszul_pair(ctx, sys.a, sys.b, i);
    return {sys, i, st.k1, std::move(st.h1)};
  }
  }
  throw PreconditionError("unknown system");
}

ModuleMap transition_map(const SystemStage &from, const SystemStage &to) {
  if (to.stage >= from.stage)
    throw PreconditionError("transition needs target stage " +
                            std::to_string(to.stage) + " < source stage " +
                            std::to_string(from.stage));
  const auto &ring = from.module->ring().presentation().ring;
  const auto gap = from.stage - to.stage;
  const auto &sys = from.system;
  ModuleMap m{from.module, to.module, {}};
  if (sys.kind == HomologySystem::Kind::H1Pair)
    m.entries = {{Entry(var_power(ring, sys.a, gap)), Entry()},
                 {Entry(), Entry(var_power(ring, sys.b, gap))}};
  else
    m.entries = {{Entry(var_power(ring, sys.a, gap))}};
  return m;
}

TransitionResult transition_zero(const SystemStage &from,
                                 const SystemStage &to) {
  const auto phi = transition_map(from, to);
  TransitionResult res;
  std::optional<Degree> best;
  for (const auto &z : from.homology.cycles.rows()) {
    auto img = to.homology.boundaries.reduce(phi.apply(z));
    if (img.empty())
      continue;
    res.zero = false;
    const auto d = vector_degree(*from.module, z);
    const auto key = Degree{d.total(), d.dt};
    if (!best || key <= *best) {
      best = key;
      res.witness = z;
      res.image = phi.apply(z);
    }
  }
  return res;
}

TransitionResult transition_zero(const Context &ctx, const HomologySystem &sys,
                                 std::uint32_t j, std::uint32_t i) {
  if (i >= j)
    throw PreconditionError("transition needs i < j, got i=" +
                            std::to_string(i) + " j=" + std::to_string(j));
  return transition_zero(build_stage(ctx, sys, j), build_stage(ctx, sys, i));
}

std::string verdict_name(Verdict v) {
  switch (v) {
  case Verdict::ProZeroUpToWindow:
    return "pro-zero-up-to-window";
  case Verdict::NotProZeroWitnessed:
    return "NOT-pro-zero-witnessed";
  case Verdict::Inconclusive:
    return "inconclusive-window";
  }
  return {};
}

const TransitionRecord *ProZeroReport::find(std::uint32_t from,
                                            std::uint32_t to) const {
  for (const auto &t : targets)
    if (t.target == to)
      for (const auto &r : t.transitions)
        if (r.from == from)
          return &r;
  return nullptr;
}

Window default_koszul_window(const RingId &ring, std::uint32_t max_stage) {
  const auto d = max_stage + 2;
  return Window::for_ring(ring, d, d, std::max<std::uint32_t>(12, d + 2));
}

namespace {

bool closed_form_nonzero(const RingId &ring, const HomologySystem &sys,
                         std::uint32_t gap,
                         const std::vector<GradedPoly> &witness) {
  for (std::size_t c = 0; c < witness.size(); ++c) {
    const auto v = c == 0 ? sys.a : sys.b;
    if (!g_mul(var_power(ring, v, gap), witness[c]).is_zero())
      return true;
  }
  return false;
}

} // namespace

ProZeroReport pro_zero_test(const Presentation &pres,
                            const HomologySystem &sys,
                            std::uint32_t max_stage, const Window &window) {
  if (max_stage < 3)
    throw InvalidParameter("maxStage must be at least 3");
  sys.check(pres.ring);
  const auto ctx = Context::make(pres, window);

  std::map<std::uint32_t, SystemStage> stages;
  auto stage = [&](std::uint32_t i) -> const SystemStage & {
    auto it = stages.find(i);
    if (it == stages.end())
      it = stages.emplace(i, build_stage(ctx, sys, i)).first;
    return it->second;
  };

  ProZeroReport rep{pres.ring, sys, max_stage, window, {}, Verdict::Inconclusive,
                    std::nullopt, true};

  std::optional<Context> big;
  std::map<std::uint32_t, SystemStage> big_stages;

  for (std::uint32_t n = 2; n + 1 <= max_stage; ++n) {
    TargetRecord tr{n, std::nullopt, {}};
    for (std::uint32_t m = n + 1; m <= max_stage; ++m) {
      const auto &src = stage(m);
      const auto &dst = stage(n);
      auto res = transition_zero(src, dst);
      TransitionRecord rec;
      rec.from = m;
      rec.to = n;
      rec.zero = res.zero;
      if (res.zero) {
        if (!tr.least_zero_source)
          tr.least_zero_source = m;
      } else {
        rec.witness = src.module->to_graded(*res.witness);
        rec.image = dst.module->to_graded(res.image);
        rec.witness_text = src.module->format(*res.witness);
        rec.image_text = dst.module->format(res.image);
        rec.witness_degree = vector_degree(*src.module, *res.witness);
        rec.closed_form_nonzero =
            closed_form_nonzero(pres.ring, sys, m - n, rec.witness);

        if (!big)
          big = Context::make(
              pres, Window::for_ring(pres.ring, window.dt + 2,
                                     window.du + 2, window.mx + 2));
        auto big_stage = [&](std::uint32_t i) -> const SystemStage & {
          auto it = big_stages.find(i);
          if (it == big_stages.end())
            it = big_stages.emplace(i, build_stage(*big, sys, i)).first;
          return it->second;
        };
        const auto &bsrc = big_stage(m);
        const auto &bdst = big_stage(n);
        const auto w = bsrc.module->vectorize(rec.witness);
        const bool cycle = bsrc.homology.cycles.contains(w);
        const auto img = transition_map(bsrc, bdst).apply(w);
        rec.replay_nonzero = cycle && bdst.homology.is_nonzero_class(img);
        rep.replay_ok = rep.replay_ok && rec.replay_nonzero;
      }
      tr.transitions.push_back(std::move(rec));
    }
    rep.targets.push_back(std::move(tr));
  }

  for (std::uint32_t g = 1; g + 2 <= max_stage && !rep.uniform_gap; ++g) {
    bool all = true;
    for (const auto &t : rep.targets)
      if (t.target + g <= max_stage)
        all = all && rep.find(t.target + g, t.target)->zero;
    if (all)
      rep.uniform_gap = g;
  }
  const bool some_target_dead = std::any_of(
      rep.targets.begin(), rep.targets.end(),
      [](const TargetRecord &t) { return !t.least_zero_source; });
  if (rep.uniform_gap)
    rep.verdict = Verdict::ProZeroUpToWindow;
  else if (some_target_dead && rep.replay_ok)
    rep.verdict = Verdict::NotProZeroWitnessed;
  return rep;
}

} // namespace elkik::koszul

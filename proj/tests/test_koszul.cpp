#include <doctest.h>

#include "elkik/errors.hpp"
#include "elkik/koszul.hpp"
#include "elkik/print.hpp"

#include <map>

using namespace elkik;
using namespace elkik::koszul;
using oracle::Presentation;
using oracle::Window;

namespace {

GradedPoly mono(const RingId &ring, Degree d, RBasisIndex idx) {
  return GradedPoly::monomial(ring, d, idx);
}

Context ctx_for(const RingId &ring, std::uint32_t dt, std::uint32_t du,
                std::uint32_t mx) {
  return Context::make(Presentation::of(ring), Window::for_ring(ring, dt, du, mx));
}

} // namespace

TEST_CASE("system names") {
  CHECK(HomologySystem::parse("H1(t)").kind == HomologySystem::Kind::H1Single);
  const auto s = HomologySystem::parse(" H0( u ; H1(t) ) ");
  CHECK(s.kind == HomologySystem::Kind::H0OfH1);
  CHECK(s.str() == "H0(u;H1(t))");
  CHECK(HomologySystem::parse("H1(t,u)").str() == "H1(t,u)");
  CHECK_THROWS_AS(HomologySystem::parse("H2(t)"), ParseError);
  CHECK_THROWS_AS(HomologySystem::parse("H1(u)").check(RingId::e1(2)), InvalidParameter);
  CHECK_THROWS_AS(HomologySystem::parse("H1(t)").check(RingId::r_only()), UnsupportedRing);
}

TEST_CASE("first Koszul homology of one power") {
  const auto e1 = RingId::e1(2);
  const auto ctx = ctx_for(e1, 6, 0, 10);
  const auto st = koszul_single(ctx, Var::T, 3);
  const auto &k1 = *st.k1;
  for (auto [d, j] : {std::pair{0u, 0u}, {0u, 1u}, {1u, 0u}, {3u, 0u}})
    CHECK(st.h1.cycles.contains(k1.vectorize({mono(e1, {d, 0}, RBasisIndex::x(j))})));
  CHECK_FALSE(st.h1.cycles.contains(k1.vectorize({mono(e1, {}, RBasisIndex::x(2))})));

  CHECK(koszul_h1_single(ctx_for(RingId::gs(), 6, 0, 10), Var::T, 5).is_zero());

  const auto ctrl = RingId::ctrl();
  const auto cctx = ctx_for(ctrl, 4, 0, 6);
  const auto cs = koszul_single(cctx, Var::T, 2);
  CHECK(cs.h1.cycles.contains(cs.k1->vectorize({mono(ctrl, {}, RBasisIndex::y(1))})));
  CHECK(cs.h1.cycles.contains(cs.k1->vectorize({mono(ctrl, {1, 0}, RBasisIndex::y(1))})));
  for (const auto &r : cs.h1.cycles.rows()) {
    const auto g = cs.k1->to_graded(r).front();
    for (const auto &[d, c] : g.terms())
      CHECK(c.coefficient(RBasisIndex::one()).is_zero());
  }
}

TEST_CASE("one-power homology equals the oracle kernel on the whole window") {
  for (const auto &ring : {RingId::e1(2), RingId::e2(), RingId::ctrl()}) {
    const auto w = Window::for_ring(ring, 6, 4, 10);
    const auto pres = Presentation::of(ring);
    const auto ctx = Context::make(pres, w);
    for (auto v : {Var::T, Var::U}) {
      if (v == Var::U && !ring.has_u())
        continue;
      for (std::uint32_t i = 1; i <= 3; ++i) {
        const auto st = koszul_single(ctx, v, i);
        const auto shift = var_degree(v, i);
        const Window sub{w.dt - shift.dt, w.du - shift.du, w.mx};
        const auto dom = oracle::WindowSpace::make(pres, sub);
        const auto K = oracle::kernel(oracle::mul_map(pres, var_power(ring, v, i), dom));
        std::vector<SparseVec> lifted;
        for (const auto &r : K.rows())
          lifted.push_back(st.k1->vectorize({dom->to_graded(r)}));
        CAPTURE(ring.name());
        CAPTURE(i);
        CHECK(Subspace::span(st.k1->dim(), lifted) == st.h1.cycles);
      }
    }
  }
}

TEST_CASE("transitions and their witnesses") {
  const auto e1 = RingId::e1(2);
  const auto ctx = ctx_for(e1, 8, 0, 12);
  const auto sys = HomologySystem::parse("H1(t)");
  const auto r = transition_zero(ctx, sys, 5, 2);
  CHECK_FALSE(r.zero);
  REQUIRE(r.witness);
  const auto from = build_stage(ctx, sys, 5);
  const auto to = build_stage(ctx, sys, 2);
  CHECK(from.module->format(*r.witness) == "x3");
  CHECK(to.module->format(r.image) == "x3*t^3");
  CHECK_FALSE(mono(e1, {3, 0}, RBasisIndex::x(3)).is_zero());

  const auto cctx = ctx_for(RingId::ctrl(), 8, 0, 12);
  CHECK(transition_zero(cctx, sys, 4, 2).zero);
  CHECK_THROWS_AS(transition_zero(ctx, sys, 2, 2), PreconditionError);
  CHECK_THROWS_AS(transition_zero(ctx, sys, 2, 3), PreconditionError);
}

TEST_CASE("transitions compose") {
  for (const auto &[ring, name] :
       {std::pair{RingId::e1(2), "H1(t)"}, {RingId::e2(), "H0(u;H1(t))"},
        {RingId::e2(), "H1(t,u)"}, {RingId::ctrl(), "H1(t)"}}) {
    const auto ctx = ctx_for(ring, 6, 6, 10);
    const auto sys = HomologySystem::parse(name);
    std::map<std::uint32_t, SystemStage> st;
    for (std::uint32_t i = 2; i <= 5; ++i)
      st.emplace(i, build_stage(ctx, sys, i));
    for (std::uint32_t l = 4; l <= 5; ++l)
      for (std::uint32_t j = 3; j < l; ++j)
        for (std::uint32_t i = 2; i < j; ++i) {
          const auto lj = transition_map(st.at(l), st.at(j));
          const auto ji = transition_map(st.at(j), st.at(i));
          const auto li = transition_map(st.at(l), st.at(i));
          const auto reps = st.at(l).homology.representatives();
          for (const auto &rep : reps.rows()) {
            SparseVec diff = ji.apply(lj.apply(rep));
            axpy(diff, Scalar(-1), li.apply(rep));
            CAPTURE(ring.name());
            CHECK(st.at(i).homology.boundaries.contains(diff));
          }
        }
  }
}

TEST_CASE("pair complexes square to zero") {
  const auto ctx = ctx_for(RingId::e2(), 5, 5, 9);
  for (std::uint32_t i = 1; i <= 4; ++i) {
    const auto st = koszul_pair(ctx, Var::T, Var::U, i);
    CHECK(st.d_squared_zero);
    for (auto k : st.k2->standard())
      CHECK(st.d1.apply(st.d2.apply({{k, Scalar(1)}})).empty());
  }
  const auto g = ctx_for(RingId::gs(), 5, 0, 9);
  CHECK(koszul_pair(g, Var::T, Var::T, 2).d_squared_zero);
}

TEST_CASE("the short exact row") {
  const auto ctx = ctx_for(RingId::e2(), 5, 5, 9);
  for (std::uint32_t i : {2u, 3u}) {
    const auto r = ses_row_check(ctx, Var::T, Var::U, i);
    CHECK(r.injective);
    CHECK(r.middle_exact);
    CHECK(r.surjective);
    CHECK(r.dim_left + r.dim_right == r.dim_middle);
  }
  // Window too small for anything to survive: the row is 0 -> 0 -> 0.
  const auto tiny = ses_row_check(ctx, Var::T, Var::U, 6);
  CHECK(tiny.exact());
  CHECK(tiny.dim_middle == 0);
}

TEST_CASE("pro-zero verdicts") {
  const auto sys = HomologySystem::parse("H1(t)");
  const auto e1 = RingId::e1(2);
  const auto rep = pro_zero_test(Presentation::of(e1), sys, 8, default_koszul_window(e1, 8));
  CHECK(rep.verdict == Verdict::NotProZeroWitnessed);
  CHECK(rep.replay_ok);
  for (std::uint32_t j = 3; j <= 8; ++j) {
    const auto *r = rep.find(j, 2);
    REQUIRE(r);
    CHECK_FALSE(r->zero);
    CHECK(r->witness_text == "x" + std::to_string(j - 2));
    CHECK(r->closed_form_nonzero);
  }

  const auto ctrl = RingId::ctrl();
  const auto c = pro_zero_test(Presentation::of(ctrl), sys, 8, default_koszul_window(ctrl, 8));
  CHECK(c.verdict == Verdict::ProZeroUpToWindow);
  CHECK(c.uniform_gap == 2u);

  const auto gs = RingId::gs();
  const auto g = pro_zero_test(Presentation::of(gs), sys, 6, default_koszul_window(gs, 6));
  CHECK(g.verdict == Verdict::ProZeroUpToWindow);

  CHECK_THROWS_AS(pro_zero_test(Presentation::of(gs), sys, 2, default_koszul_window(gs, 2)),
                  InvalidParameter);
  CHECK(verdict_name(Verdict::Inconclusive) == "inconclusive-window");
}

TEST_CASE("witness chain for the mixed system") {
  const auto e2 = RingId::e2();
  const auto rep = pro_zero_test(Presentation::of(e2), HomologySystem::parse("H0(u;H1(t))"),
                                 6, default_koszul_window(e2, 6));
  CHECK(rep.verdict == Verdict::NotProZeroWitnessed);
  for (std::uint32_t nu = 3; nu <= 6; ++nu) {
    const auto *r = rep.find(nu, 2);
    REQUIRE(r);
    CHECK(r->witness_text == "x" + std::to_string(nu - 2));
    CHECK(r->replay_nonzero);
  }
}

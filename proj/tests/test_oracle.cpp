#include <doctest.h>

#include "elkik/errors.hpp"
#include "elkik/fuzz.hpp"
#include "elkik/oracle.hpp"
#include "elkik/print.hpp"

#include "generators.hpp"

#include <set>

using namespace elkik;
using namespace elkik::oracle;

namespace {

RawPoly raw(std::uint32_t ypow, std::int32_t xa = -1, std::int32_t xb = -1,
            std::uint32_t dt = 0, std::uint32_t du = 0) {
  return {{Scalar(1), RawMono{dt, du, ypow, xa, xb}}};
}

GradedPoly mono(const RingId &ring, Degree d, RBasisIndex idx) {
  return GradedPoly::monomial(ring, d, idx);
}

Subspace closed_form_ann(const Presentation &pres, std::uint32_t dt,
                         std::uint32_t du, const Window &w) {
  const auto space = r_slice(pres, w);
  std::vector<SparseVec> vs;
  for (auto idx : ann_formula(pres.ring, dt, du).up_to(w.mx))
    vs.push_back(space->vectorize(mono(pres.ring, {}, idx)));
  return Subspace::span(space->basis().size(), vs);
}

std::set<std::string> texts(const WindowSpace &s, const Subspace &sub) {
  std::set<std::string> out;
  for (const auto &r : sub.rows())
    out.insert(s.format(r));
  return out;
}

} // namespace

TEST_CASE("reduction in the coefficient ring by row elimination") {
  const auto pres = Presentation::of(RingId::r_only());
  const WindowSpace s(pres, {{0, 0}}, 8, 2);
  // Rewriting by hand: x5*y = x4, x4*y = x3.
  CHECK(s.reduce(s.vectorize(raw(2, 5))) ==
        s.vectorize(mono(RingId::r_only(), {}, RBasisIndex::x(3))));
  CHECK(s.reduce(s.vectorize(raw(1, 0))).empty());
  CHECK(s.reduce(SparseVec{}).empty());
  CHECK(s.reduce(s.vectorize(raw(0, 2, 3))).empty());
}

TEST_CASE("closed-form basis is independent in the quotient") {
  for (const auto &ring : gen::all_rings()) {
    const auto w = Window::for_ring(ring, 4, 2, 8);
    const auto pres = Presentation::of(ring);
    const auto space = WindowSpace::make(pres, w);
    std::vector<SparseVec> vs;
    for (const auto d : space->slices())
      for (std::uint32_t j = 0; j <= w.mx; ++j)
        for (auto idx : {RBasisIndex::y(j), RBasisIndex::x(j)}) {
          if (ring.kind == RingId::Kind::CTRL && idx.is_x())
            continue;
          const auto p = mono(ring, d, idx);
          if (!p.is_zero())
            vs.push_back(space->reduce(space->vectorize(p)));
        }
    CAPTURE(ring.name());
    CHECK(Subspace::span(space->basis().size(), vs).rank() == vs.size());
    CHECK(space->standard().size() == vs.size());
  }
}

TEST_CASE("oracle annihilators equal the closed form") {
  for (const auto &ring : gen::all_rings()) {
    if (!ring.has_t())
      continue;
    const auto pres = Presentation::of(ring);
    const auto w = Window::for_ring(ring, 10, 3, 12);
    for (std::uint32_t du = 0; du <= w.du; ++du)
      for (std::uint32_t dt = 0; dt <= 10; ++dt) {
        CAPTURE(ring.name());
        CAPTURE(dt);
        CAPTURE(du);
        CHECK(annihilator_oracle(pres, dt, du, w) == closed_form_ann(pres, dt, du, w));
      }
  }
}

TEST_CASE("annihilator soundness over a wide window") {
  const auto ring = RingId::e2();
  const auto pres = Presentation::of(ring);
  const auto w = Window::for_ring(ring, 12, 4, 14);
  const auto space = r_slice(pres, w);
  for (std::uint32_t du = 0; du <= 4; ++du)
    for (std::uint32_t dt = 0; dt <= 12; ++dt) {
      const auto ann = annihilator_oracle(pres, dt, du, w);
      for (std::uint32_t j = 0; j <= w.mx; ++j) {
        const auto v = space->vectorize(mono(ring, {}, RBasisIndex::x(j)));
        CHECK(ann.contains(v) == mono(ring, {dt, du}, RBasisIndex::x(j)).is_zero());
      }
    }
}

TEST_CASE("field of positive characteristic") {
  const auto pres = Presentation::of(RingId::e1(2), Field{7});
  const auto w = Window::for_ring(pres.ring, 6, 0, 10);
  CHECK(annihilator_oracle(pres, 4, 0, w).rank() == 3);
}

TEST_CASE("kernels of multiplication maps") {
  const auto gs = RingId::gs();
  const auto pres = Presentation::of(gs);
  const auto w = Window::for_ring(gs, 6, 0, 16);
  const auto t_y = mono(gs, {1, 0}, RBasisIndex::one()) - mono(gs, {}, RBasisIndex::y(1));
  CHECK(kernel(mul_map(pres, t_y, w)).is_zero());
  CHECK(kernel(mul_map(pres, GradedPoly::constant(gs, 1), w)).is_zero());

  const auto e1 = RingId::e1(2);
  const auto e1p = Presentation::of(e1);
  const auto dom = WindowSpace::make(e1p, Window::for_ring(e1, 6, 0, 10));
  const auto e1_t_y =
      mono(e1, {1, 0}, RBasisIndex::one()) - mono(e1, {}, RBasisIndex::y(1));
  const auto K = kernel(mul_map(e1p, e1_t_y, dom));
  CHECK(K.contains(dom->vectorize(mono(e1, {1, 0}, RBasisIndex::x(0)))));
}

TEST_CASE("window monotonicity") {
  const auto ring = RingId::e1(2);
  const auto pres = Presentation::of(ring);
  const auto small = Window::for_ring(ring, 6, 0, 10);
  const auto large = Window::for_ring(ring, 9, 0, 14);
  for (std::uint32_t dt = 0; dt <= 8; ++dt) {
    const auto a = annihilator_oracle(pres, dt, 0, small);
    const auto b = annihilator_oracle(pres, dt, 0, large);
    auto big = texts(*r_slice(pres, large), b);
    for (const auto &s : texts(*r_slice(pres, small), a))
      CHECK(big.count(s) == 1);
  }

  const auto t_y = mono(ring, {1, 0}, RBasisIndex::one()) - mono(ring, {}, RBasisIndex::y(1));
  const auto ds = WindowSpace::make(pres, small);
  const auto dl = WindowSpace::make(pres, large);
  const auto ks = kernel(mul_map(pres, t_y, ds));
  const auto kl = kernel(mul_map(pres, t_y, dl));
  CHECK(ks.rank() <= kl.rank());
  for (const auto &r : ks.rows())
    CHECK(kl.contains(dl->vectorize(ds->to_graded(r))));
}

TEST_CASE("random products: closed form against raw reduction") {
  gen::Rng rng(99);
  const gen::PolyShape shape{3, 2, 4, 3, 1000, 9};
  for (const auto &ring : gen::all_rings()) {
    std::vector<Degree> slices;
    for (std::uint32_t e = 0; e <= (ring.has_u() ? 4u : 0u); ++e)
      for (std::uint32_t d = 0; d <= (ring.has_t() ? 6u : 0u); ++d)
        slices.push_back({d, e});
    const WindowSpace space(Presentation::of(ring), slices, 10, 2);
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
      const auto p = gen::graded(rng, ring, shape), q = gen::graded(rng, ring, shape);
      if (!products_agree(p, q, space)) {
        ++bad;
        MESSAGE(ring.name() << ": " << print_element(p) << " * " << print_element(q));
      }
    }
    CAPTURE(ring.name());
    CHECK(bad == 0);
  }
}

TEST_CASE("library fuzz driver agrees and detects a dropped generator") {
  for (const auto &ring : gen::all_rings())
    CHECK(fuzz::cross_check_products(Presentation::of(ring), 3, 200).disagreements == 0);
  auto pres = Presentation::of(RingId::e1(2));
  pres.dropped_n_generators = {0};
  CHECK(fuzz::cross_check_products(pres, 3, 200).disagreements > 0);
}

TEST_CASE("dropping a generator changes the oracle") {
  auto pres = Presentation::of(RingId::e1(2));
  pres.dropped_n_generators = {0};
  const auto w = Window::for_ring(pres.ring, 6, 0, 10);
  CHECK(annihilator_oracle(pres, 2, 0, w).is_zero());
  CHECK_FALSE(closed_form_ann(pres, 2, 0, w).is_zero());
}

TEST_CASE("window errors") {
  CHECK_THROWS_AS(Window::for_ring(RingId::e1(2), 8, 0, 9), WindowTooSmall);
  CHECK_THROWS_AS(check_margin(RingId::gs(), Window{2, 1, 6}), WindowTooSmall);
  const auto pres = Presentation::of(RingId::e1(2));
  const auto space = WindowSpace::make(pres, Window::for_ring(pres.ring, 2, 0, 4));
  CHECK_THROWS_AS(space->vectorize(mono(pres.ring, {}, RBasisIndex::x(9))),
                  WindowTooSmall);
  CHECK_THROWS_AS(space->vectorize(mono(pres.ring, {3, 0}, RBasisIndex::x(3))),
                  WindowTooSmall);
}

TEST_CASE("torsion subspaces") {
  const auto e1 = RingId::e1(2);
  const auto w = Window::for_ring(e1, 4, 0, 8);
  const auto K = default_torsion_exponent(w);
  const auto dom = WindowSpace::make(Presentation::of(e1), w);
  const auto T = torsion_subspace(Presentation::of(e1), w, K);
  CHECK(T.contains(dom->vectorize(mono(e1, {1, 0}, RBasisIndex::x(0)))));
  CHECK_FALSE(T.contains(dom->vectorize(mono(e1, {1, 0}, RBasisIndex::one()))));

  const auto ctrl = RingId::ctrl();
  const auto cw = Window::for_ring(ctrl, 4, 0, 8);
  const auto cdom = WindowSpace::make(Presentation::of(ctrl), cw);
  const auto CT = torsion_subspace(Presentation::of(ctrl), cw, default_torsion_exponent(cw));
  CHECK(CT.contains(cdom->vectorize(mono(ctrl, {}, RBasisIndex::y(1)))));
  CHECK(CT.contains(cdom->vectorize(mono(ctrl, {1, 0}, RBasisIndex::y(1)))));
  CHECK_FALSE(CT.contains(cdom->vectorize(mono(ctrl, {}, RBasisIndex::one()))));

  const auto gs = RingId::gs();
  const auto gw = Window::for_ring(gs, 4, 0, 8);
  CHECK(torsion_subspace(Presentation::of(gs), gw, default_torsion_exponent(gw)).is_zero());
}

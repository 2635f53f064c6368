#include "elkik/fuzz.hpp"

namespace elkik::fuzz {

GradedPoly random_element(const RingId &ring, std::mt19937_64 &rng,
                          const Bounds &b, const Field &field) {
  auto pick = [&](std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(0, hi)(rng);
  };
  const bool ctrl = ring.kind == RingId::Kind::CTRL;
  GradedPoly p(ring);
  const auto terms = pick(b.max_terms);
  for (std::uint32_t k = 0; k < terms; ++k) {
    const Degree d{ring.has_t() ? pick(b.max_dt) : 0,
                   ring.has_u() ? pick(b.max_du) : 0};
    const auto idx = (ctrl || pick(1) == 0) ? RBasisIndex::y(pick(b.max_index))
                                            : RBasisIndex::x(pick(b.max_index));
    long c = static_cast<long>(pick(6)) - 3;
    if (c == 0)
      c = 1;
    Scalar s = field.is_rational() ? Scalar(c) : field.make(c);
    if (field.is_rational() && pick(3) == 0)
      s = s / Scalar(static_cast<long>(pick(3)) + 2);
    p = p + GradedPoly::monomial(ring, d, idx, s);
  }
  return p;
}

ProductCheck cross_check_products(const oracle::Presentation &pres,
                                  std::uint64_t seed, std::size_t count,
                                  const Bounds &b) {
  const auto &ring = pres.ring;
  std::vector<Degree> slices;
  const std::uint32_t dt = ring.has_t() ? 2 * b.max_dt : 0;
  const std::uint32_t du = ring.has_u() ? 2 * b.max_du : 0;
  for (std::uint32_t e = 0; e <= du; ++e)
    for (std::uint32_t d = 0; d <= dt; ++d)
      slices.push_back({d, e});
  const oracle::WindowSpace space(pres, slices, 2 * b.max_index + 2, 2);

  std::mt19937_64 rng(seed);
  ProductCheck out;
  for (std::size_t i = 0; i < count; ++i) {
    auto p = random_element(ring, rng, b, pres.field);
    auto q = random_element(ring, rng, b, pres.field);
    ++out.checked;
    if (!oracle::products_agree(p, q, space)) {
      ++out.disagreements;
      if (!out.first_bad)
        out.first_bad.emplace(std::move(p), std::move(q));
    }
  }
  return out;
}

} // namespace elkik::fuzz

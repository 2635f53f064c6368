#include <doctest.h>

#include "elkik/linalg.hpp"

#include "generators.hpp"

using namespace elkik;

namespace {

SparseVec vec(std::initializer_list<std::pair<std::size_t, long>> entries) {
  SparseVec v;
  for (auto [k, c] : entries)
    add_entry(v, k, Scalar(c));
  return v;
}

SparseVec random_vec(gen::Rng &rng, std::size_t dim, std::uint32_t fill) {
  SparseVec v;
  for (std::uint32_t k = 0; k < fill; ++k)
    add_entry(v, rng.upto(static_cast<std::uint32_t>(dim - 1)), rng.rational(20, 4));
  return v;
}

Subspace random_subspace(gen::Rng &rng, std::size_t dim) {
  std::vector<SparseVec> vs;
  const auto n = rng.upto(5);
  for (std::uint32_t i = 0; i < n; ++i)
    vs.push_back(random_vec(rng, dim, 3));
  // Dependent rows on purpose.
  if (vs.size() >= 2 && rng.coin()) {
    auto w = vs[0];
    axpy(w, Scalar(3), vs[1]);
    vs.push_back(w);
  }
  return Subspace::span(dim, vs);
}

} // namespace

TEST_CASE("RREF is canonical") {
  const auto a = Subspace::span(3, {vec({{0, 1}, {1, 1}}), vec({{1, 1}, {2, 1}})});
  const auto b = Subspace::span(3, {vec({{0, 1}, {2, -1}}), vec({{0, 2}, {1, 2}})});
  CHECK(a == b);
  CHECK(a.rank() == 2);
  CHECK(a.pivots() == std::vector<std::size_t>{0, 1});
  CHECK(a.contains(vec({{0, 1}, {1, 2}, {2, 1}})));
  CHECK_FALSE(a.contains(vec({{2, 1}})));
}

TEST_CASE("sum and intersection") {
  const auto a = Subspace::span(3, {vec({{0, 1}}), vec({{1, 1}})});
  const auto b = Subspace::span(3, {vec({{1, 1}}), vec({{2, 1}})});
  CHECK(a.intersect(b) == Subspace::span(3, {vec({{1, 1}})}));
  CHECK(a.sum(b).rank() == 3);
}

TEST_CASE("kernel and preimage") {
  // e0 -> e0, e1 -> e0, e2 -> 0
  const std::vector<SparseVec> images{vec({{0, 1}}), vec({{0, 1}}), {}};
  const auto k = kernel_of(images, 1);
  CHECK(k == Subspace::span(3, {vec({{0, 1}, {1, -1}}), vec({{2, 1}})}));
  const auto all = Subspace::span(1, {vec({{0, 1}})});
  CHECK(kernel_of(images, 1, &all).rank() == 3);
  const auto img = image_of(Subspace::span(3, {vec({{0, 1}})}), images, 1);
  CHECK(img == all);
  CHECK(apply_map(vec({{0, 2}, {1, 3}}), images) == vec({{0, 5}}));
}

TEST_CASE("random subspaces: dimension formula and kernel soundness") {
  gen::Rng rng(5);
  const std::size_t dim = 7;
  for (int i = 0; i < 300; ++i) {
    const auto a = random_subspace(rng, dim), b = random_subspace(rng, dim);
    CHECK(a.sum(b).rank() + a.intersect(b).rank() == a.rank() + b.rank());
    CHECK(a.sum(b).contains(a));
    CHECK(a.contains(a.intersect(b)));
    CHECK(b.contains(a.intersect(b)));

    std::vector<SparseVec> images;
    for (std::size_t j = 0; j < dim; ++j)
      images.push_back(rng.coin() ? random_vec(rng, 5, 2) : SparseVec{});
    const auto k = kernel_of(images, 5);
    for (const auto &r : k.rows())
      CHECK(apply_map(r, images).empty());
    const auto full = Subspace::span(dim, [&] {
      std::vector<SparseVec> units;
      for (std::size_t j = 0; j < dim; ++j)
        units.push_back(vec({{j, 1}}));
      return units;
    }());
    CHECK(k.rank() + image_of(full, images, 5).rank() == dim);
  }
}

#include "elkik/linalg.hpp"

#include "elkik/errors.hpp"

namespace elkik {

void add_entry(SparseVec &v, std::size_t col, const Scalar &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = v.try_emplace(col, c);
  if (inserted)
    return;
  it->second += c;
  if (it->second.is_zero())
    v.erase(it);
}

void axpy(SparseVec &v, const Scalar &a, const SparseVec &w) {
  if (a.is_zero())
    return;
  for (const auto &[col, c] : w)
    add_entry(v, col, a * c);
}

SparseVec scaled(const SparseVec &v, const Scalar &a) {
  SparseVec out;
  if (a.is_zero())
    return out;
  for (const auto &[col, c] : v)
    out.emplace(col, c * a);
  return out;
}

SparseVec Echelon::reduce(SparseVec v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const auto col = it->first;
    const Scalar c = it->second;
    axpy(v, -c, row->second);
    it = v.upper_bound(col);
  }
  return v;
}

SparseVec Echelon::insert(SparseVec v) {
  for (const auto &[col, c] : v)
    if (col >= dim_)
      throw DimensionMismatch("vector entry beyond ambient dimension");
  v = reduce(std::move(v));
  if (v.empty())
    return v;
  const auto lead = v.begin()->first;
  const auto inv = v.begin()->second.inverse();
  auto normalized = scaled(v, inv);
  rows_.emplace(lead, normalized);
  return normalized;
}

Subspace Echelon::finish() && {
  // Back-substitution from the last pivot: rows with larger pivots are
  // already fully reduced when they are used.
  Subspace s(dim_);
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    auto &row = it->second;
    auto e = row.upper_bound(it->first);
    while (e != row.end()) {
      auto other = rows_.find(e->first);
      if (other == rows_.end()) {
        ++e;
        continue;
      }
      const auto col = e->first;
      const Scalar c = e->second;
      axpy(row, -c, other->second);
      e = row.upper_bound(col);
    }
  }
  s.rows_.reserve(rows_.size());
  for (auto &[pivot, row] : rows_) {
    s.pivot_row_.emplace(pivot, s.rows_.size());
    s.rows_.push_back(std::move(row));
  }
  return s;
}

Subspace Subspace::span(std::size_t dim, const std::vector<SparseVec> &vecs) {
  Echelon e(dim);
  for (const auto &v : vecs)
    e.insert(v);
  return std::move(e).finish();
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const auto &[p, r] : pivot_row_)
    out.push_back(p);
  return out;
}

void Subspace::check_dim(std::size_t d) const {
  if (d != dim_)
    throw DimensionMismatch("ambient dimensions " + std::to_string(dim_) +
                            " and " + std::to_string(d));
}

SparseVec Subspace::reduce(SparseVec v) const {
  if (!v.empty() && v.rbegin()->first >= dim_)
    throw DimensionMismatch("vector entry beyond ambient dimension");
  // RREF: each row is zero on every other pivot, so one pass suffices.
  std::vector<std::pair<std::size_t, Scalar>> hits;
  for (const auto &[col, c] : v)
    if (pivot_row_.count(col))
      hits.emplace_back(col, c);
  for (const auto &[col, c] : hits)
    axpy(v, -c, rows_[pivot_row_.at(col)]);
  return v;
}

bool Subspace::contains(const Subspace &other) const {
  check_dim(other.dim_);
  for (const auto &r : other.rows_)
    if (!contains(r))
      return false;
  return true;
}

Subspace Subspace::sum(const Subspace &other) const {
  check_dim(other.dim_);
  Echelon e(dim_);
  for (const auto &r : rows_)
    e.insert(r);
  for (const auto &r : other.rows_)
    e.insert(r);
  return std::move(e).finish();
}

Subspace Subspace::intersect(const Subspace &other) const {
  check_dim(other.dim_);
  // Zassenhaus: rows (a | a) and (b | 0); the rows with vanishing left half
  // span the intersection in their right half.
  const auto n = dim_;
  Echelon e(2 * n);
  for (const auto &r : rows_) {
    SparseVec v = r;
    for (const auto &[col, c] : r)
      v.emplace(n + col, c);
    e.insert(std::move(v));
  }
  for (const auto &r : other.rows_)
    e.insert(r);
  auto full = std::move(e).finish();
  std::vector<SparseVec> inter;
  for (const auto &r : full.rows())
    if (r.begin()->first >= n) {
      SparseVec v;
      for (const auto &[col, c] : r)
        v.emplace(col - n, c);
      inter.push_back(std::move(v));
    }
  return span(n, inter);
}

Subspace kernel_of(const std::vector<SparseVec> &images, std::size_t codim,
                   const Subspace *modulo) {
  const auto n = images.size();
  Echelon e(codim + n);
  std::vector<SparseVec> kernel;
  for (std::size_t j = 0; j < n; ++j) {
    SparseVec v = modulo ? modulo->reduce(images[j]) : images[j];
    for (const auto &[col, c] : v)
      if (col >= codim)
        throw DimensionMismatch("image entry beyond codomain dimension");
    v.emplace(codim + j, Scalar(1));
    auto r = e.reduce(std::move(v));
    if (r.begin()->first >= codim) {
      SparseVec k;
      for (const auto &[col, c] : r)
        k.emplace(col - codim, c);
      kernel.push_back(std::move(k));
    } else {
      e.insert(std::move(r));
    }
  }
  return Subspace::span(n, kernel);
}

SparseVec apply_map(const SparseVec &v, const std::vector<SparseVec> &images) {
  SparseVec out;
  for (const auto &[col, c] : v) {
    if (col >= images.size())
      throw DimensionMismatch("vector entry beyond map domain");
    axpy(out, c, images[col]);
  }
  return out;
}

Subspace image_of(const Subspace &s, const std::vector<SparseVec> &images,
                  std::size_t codim) {
  std::vector<SparseVec> out;
  out.reserve(s.rank());
  for (const auto &r : s.rows())
    out.push_back(apply_map(r, images));
  return Subspace::span(codim, out);
}

} // namespace elkik

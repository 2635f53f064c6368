#pragma once

// Exact sparse linear algebra over Scalar. Subspaces are kept in reduced
// row-echelon form with pivot = first nonzero column, so two subspaces are
// equal iff their row lists are equal.

#include "elkik/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace elkik {

using SparseVec = std::map<std::size_t, Scalar>;

void axpy(SparseVec &v, const Scalar &a, const SparseVec &w);
SparseVec scaled(const SparseVec &v, const Scalar &a);
void add_entry(SparseVec &v, std::size_t col, const Scalar &c);

class Subspace {
public:
  explicit Subspace(std::size_t dim = 0) : dim_(dim) {}
  static Subspace span(std::size_t dim, const std::vector<SparseVec> &vecs);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<SparseVec> &rows() const { return rows_; }
  std::vector<std::size_t> pivots() const;

  /// Representative of v modulo this subspace with zeros on every pivot.
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec &v) const { return reduce(v).empty(); }
  bool contains(const Subspace &other) const;

  Subspace sum(const Subspace &other) const;
  Subspace intersect(const Subspace &other) const;

  friend bool operator==(const Subspace &a, const Subspace &b) {
    return a.dim_ == b.dim_ && a.rows_ == b.rows_;
  }

private:
  void check_dim(std::size_t d) const;
  std::size_t dim_;
  std::vector<SparseVec> rows_;
  std::map<std::size_t, std::size_t> pivot_row_;

  friend class Echelon;
};

/// Incremental elimination. Rows are echelon (leading 1) until finish().
class Echelon {
public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  /// Reduces v against the current rows; stores it if it is independent.
  /// Returns the reduced vector (empty iff v was dependent).
  SparseVec insert(SparseVec v);
  SparseVec reduce(SparseVec v) const;
  std::size_t rank() const { return rows_.size(); }
  Subspace finish() &&;

private:
  std::size_t dim_;
  std::map<std::size_t, SparseVec> rows_; // pivot -> row
};

/// Null space of the map whose j-th column is images[j] (vectors of length
/// codim). When `modulo` is given, images are first reduced by it, so the
/// result is the preimage of `modulo`.
Subspace kernel_of(const std::vector<SparseVec> &images, std::size_t codim,
                   const Subspace *modulo = nullptr);

/// Pushes every row of `s` through `images` (images[j] = image of e_j).
Subspace image_of(const Subspace &s, const std::vector<SparseVec> &images,
                  std::size_t codim);
SparseVec apply_map(const SparseVec &v, const std::vector<SparseVec> &images);

} // namespace elkik

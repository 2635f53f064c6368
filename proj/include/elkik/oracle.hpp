#pragma once

// Brute-force verification layer. Works directly with the raw presentation
// k[y, x0, x1, ..., t, u] / (generators) over a finite window of monomials
// and never consults the closed-form rules of ring.hpp; elements of
// GradedPoly enter only as lists of raw monomials.
//
// Every generator is homogeneous in the (t,u)-bidegree, so the quotient is
// computed slice by slice. Inside a slice the raw monomials are
// y^a * x_I with |I| <= xcap, y-exponent and x-indices bounded by Mx.
// Monomials carrying both y and x, or two x-factors, sort before the pure
// ones {y^a} and {x_i}; the pure part follows the canonical term order of
// ring.hpp. Row reduction therefore pivots on mixed monomials first and
// reduced representatives are written in the pure monomials.

#include "elkik/linalg.hpp"
#include "elkik/ring.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace elkik::oracle {

struct Window {
  std::uint32_t dt = 0;
  std::uint32_t du = 0;
  std::uint32_t mx = 0;

  /// Clamps the directions that do not exist in the ring (du outside E2,
  /// dt in R-only) and checks the margin mx >= dt + 2.
  static Window for_ring(const RingId &ring, std::uint32_t dt,
                         std::uint32_t du, std::uint32_t mx);
  std::string str() const;
  friend bool operator==(const Window &, const Window &) = default;
};

void check_margin(const RingId &ring, const Window &w);

/// The relations actually used: the ring's generators, optionally with some
/// generators x_j t^(m+j) of n removed (mutation testing).
struct Presentation {
  RingId ring;
  std::vector<std::uint32_t> dropped_n_generators;
  Field field;

  static Presentation of(const RingId &ring, Field field = {}) {
    return {ring, {}, field};
  }
};

struct RawMono {
  std::uint32_t dt = 0;
  std::uint32_t du = 0;
  std::uint32_t ypow = 0;
  std::int32_t xa = -1; // x-indices, xa <= xb, -1 = absent
  std::int32_t xb = -1;

  int x_count() const { return (xa >= 0) + (xb >= 0); }
  bool is_pure() const {
    return x_count() == 0 || (x_count() == 1 && ypow == 0);
  }
  Degree degree() const { return {dt, du}; }
  friend auto operator<=>(const RawMono &, const RawMono &) = default;
};

/// Product of raw monomials; nullopt when it would carry three x-factors.
std::optional<RawMono> raw_mul(const RawMono &a, const RawMono &b);
std::string format_raw(const RawMono &m, bool ctrl);

/// Ordered raw monomials of a finite set of slices with a bijective index.
class MonoBasis {
public:
  std::size_t size() const { return monos_.size(); }
  const RawMono &at(std::size_t i) const { return monos_[i]; }
  std::optional<std::size_t> find(const RawMono &m) const;
  void push(const RawMono &m);

private:
  std::vector<RawMono> monos_;
  std::map<RawMono, std::size_t> index_;
};

using RawPoly = std::vector<std::pair<Scalar, RawMono>>;

/// Raw generators of the presentation whose x-indices stay <= mx.
std::vector<RawPoly> generators(const Presentation &pres, std::uint32_t mx);

/// Quotient data for a set of slices. Immutable once built.
class WindowSpace {
public:
  WindowSpace(Presentation pres, std::vector<Degree> slices, std::uint32_t mx,
              int xcap);
  /// Every slice (d, e) with d <= w.dt, e <= w.du.
  static std::shared_ptr<const WindowSpace>
  make(const Presentation &pres, const Window &w, int xcap = 1);

  const Presentation &presentation() const { return pres_; }
  const MonoBasis &basis() const { return basis_; }
  const Subspace &relations() const { return relations_; }
  const std::vector<Degree> &slices() const { return slices_; }
  std::uint32_t mx() const { return mx_; }
  int xcap() const { return xcap_; }
  bool has_slice(Degree d) const;

  /// Pure monomials that are not pivots of the relation span: a basis of
  /// the windowed quotient.
  const std::vector<std::size_t> &standard() const { return standard_; }
  std::vector<std::size_t> standard_in(Degree d) const;

  SparseVec reduce(SparseVec v) const { return relations_.reduce(std::move(v)); }
  /// Raw monomial list of a closed-form element. Throws WindowTooSmall when
  /// a term leaves the window.
  SparseVec vectorize(const GradedPoly &p) const;
  SparseVec vectorize(const RawPoly &p) const;
  /// Back to closed form; requires a pure vector.
  GradedPoly to_graded(const SparseVec &v) const;
  std::string format(const SparseVec &v) const;

private:
  Presentation pres_;
  std::vector<Degree> slices_;
  std::uint32_t mx_;
  int xcap_;
  MonoBasis basis_;
  Subspace relations_;
  std::vector<std::size_t> standard_;
};

using SpacePtr = std::shared_ptr<const WindowSpace>;

/// Span of all generator multiples that fit in the window, in RREF.
Subspace relation_span(const Presentation &pres, const Window &w);
/// Reduced representative of v modulo rel.
SparseVec quotient_reduce(const SparseVec &v, const Subspace &rel);

/// Multiplication by a fixed element, restricted to the standard monomials
/// of the domain. images[j] is the reduced image of basis().at(columns[j]).
struct LinMap {
  SpacePtr domain;
  SpacePtr codomain;
  std::vector<std::size_t> columns;
  std::vector<SparseVec> images;
};

/// Codomain is the window enlarged by the degree of g, by its y-exponent and
/// (when g carries x-terms) by enough x-index room to reduce x_i * x_j.
LinMap mul_map(const Presentation &pres, const GradedPoly &g,
               const SpacePtr &domain);
LinMap mul_map(const Presentation &pres, const GradedPoly &g, const Window &w);

/// Null space, as vectors over the domain MonoBasis.
Subspace kernel(const LinMap &m);
/// Common null space of several maps with the same domain.
Subspace kernel(const std::vector<LinMap> &maps);
/// Raw product v * g from one space into another, reduced in `to`. Throws
/// WindowTooSmall when a product monomial is missing from `to`.
SparseVec multiply(const WindowSpace &from, const SparseVec &v,
                   const GradedPoly &g, const WindowSpace &to);

/// Image of a domain vector (over the domain MonoBasis) under the map.
SparseVec apply(const LinMap &m, const SparseVec &v);

/// Windowed Ann_R(t^dt u^du): kernel of the monomial map on slice (0,0).
Subspace annihilator_oracle(const Presentation &pres, std::uint32_t dt,
                            std::uint32_t du, const Window &w);
/// The slice-(0,0) space used by annihilator_oracle.
SpacePtr r_slice(const Presentation &pres, const Window &w);

/// Vectors killed by t^K and (in E2) by u^K.
Subspace torsion_subspace(const Presentation &pres, const Window &w,
                          std::uint32_t K);
std::uint32_t default_torsion_exponent(const Window &w);

/// Closed-form product g_mul(p, q) versus the raw product reduced in `space`
/// (which needs xcap 2). Returns true when they agree.
bool products_agree(const GradedPoly &p, const GradedPoly &q,
                    const WindowSpace &space);

} // namespace elkik::oracle

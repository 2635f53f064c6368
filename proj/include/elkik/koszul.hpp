#pragma once

// Koszul complexes over windowed rings.
//
// Every chain module is free on generators of fixed (t,u)-degree, and the
// differentials and transition maps preserve the total ("complex") degree.
// A window therefore bounds complex degrees: a component with generator
// degree s only uses ring slices <= window - s, and all homology is exact
// in every complex degree inside the window.

#include "elkik/linalg.hpp"
#include "elkik/oracle.hpp"
#include "elkik/ring.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elkik::koszul {

enum class Var { T, U };

std::string var_name(Var v);
Degree var_degree(Var v, std::uint32_t e);
GradedPoly var_power(const RingId &ring, Var v, std::uint32_t e);

/// Inverse systems that can be tested: H1(a^i), H0(b^i; H1(a^i)) and
/// H1(a^i, b^i).
struct HomologySystem {
  enum class Kind { H1Single, H0OfH1, H1Pair };
  Kind kind = Kind::H1Single;
  Var a = Var::T;
  Var b = Var::U;

  /// "H1(t)", "H0(u;H1(t))", "H1(t,u)"; whitespace is ignored.
  static HomologySystem parse(std::string_view text);
  std::string str() const;
  void check(const RingId &ring) const;
};

/// Shared ring data for every stage of one computation.
struct Context {
  oracle::Presentation pres;
  oracle::Window window;
  oracle::SpacePtr ring;

  static Context make(const oracle::Presentation &pres,
                      const oracle::Window &window);
};

class FreeModule {
public:
  FreeModule(oracle::SpacePtr ring, oracle::Window window,
             std::vector<Degree> shifts);

  const oracle::WindowSpace &ring() const { return *ring_; }
  const oracle::Window &window() const { return window_; }
  const std::vector<Degree> &shifts() const { return shifts_; }
  std::size_t rank() const { return shifts_.size(); }
  std::size_t dim() const { return shifts_.size() * n_; }

  std::size_t coord(std::size_t comp, std::size_t k) const {
    return comp * n_ + k;
  }
  std::size_t comp_of(std::size_t coord) const { return coord / n_; }
  std::size_t ring_index(std::size_t coord) const { return coord % n_; }
  Degree complex_degree(std::size_t coord) const;
  bool fits(std::size_t comp, Degree ring_degree) const;

  /// Standard monomials of every component that fit the window.
  const std::vector<std::size_t> &standard() const { return standard_; }
  std::vector<std::size_t> standard_of(std::size_t comp) const;

  SparseVec component(const SparseVec &v, std::size_t comp) const;
  SparseVec embed(const SparseVec &ring_vec, std::size_t comp) const;
  std::vector<GradedPoly> to_graded(const SparseVec &v) const;
  SparseVec vectorize(const std::vector<GradedPoly> &parts) const;
  std::string format(const SparseVec &v) const;

private:
  oracle::SpacePtr ring_;
  oracle::Window window_;
  std::vector<Degree> shifts_;
  std::size_t n_;
  std::vector<std::size_t> standard_;
};

using ModulePtr = std::shared_ptr<const FreeModule>;

/// entries[r][c] multiplies component c of the source into component r of
/// the target. `degree` is the complex degree the map adds (zero for
/// differentials and transitions).
struct ModuleMap {
  ModulePtr from;
  ModulePtr to;
  std::vector<std::vector<std::optional<GradedPoly>>> entries;
  Degree degree{};

  SparseVec apply(const SparseVec &v) const;
  /// Image of the standard basis of `from`.
  Subspace image() const;
  /// Image of a graded subspace; homogeneous rows whose image would leave
  /// the window are skipped.
  Subspace image(const Subspace &s) const;
  Subspace kernel(const Subspace *modulo = nullptr) const;
};

struct Homology {
  Subspace cycles;
  Subspace boundaries;

  std::size_t dim() const { return cycles.rank() - boundaries.rank(); }
  bool is_zero() const { return dim() == 0; }
  bool is_nonzero_class(const SparseVec &v) const {
    return !boundaries.contains(v);
  }
  /// Cycles reduced against the boundary RREF: a canonical complement.
  Subspace representatives() const;
};

/// Complex degree of a homogeneous vector; throws for mixed degrees.
Degree vector_degree(const FreeModule &m, const SparseVec &v);

/// K(a^i): K1 = A e (deg e = deg a^i) -> K0 = A.
struct SingleStage {
  Var a;
  std::uint32_t stage;
  ModulePtr k0;
  ModulePtr k1;
  ModuleMap d1;
  Homology h0;
  Homology h1;
};

SingleStage koszul_single(const Context &ctx, Var a, std::uint32_t i);
/// Windowed Ann(a^i) as a subspace of K1.
Subspace koszul_h1_single(const Context &ctx, Var a, std::uint32_t i);

/// K(a^i, b^i) with d2(c) = (b^i c, -a^i c) and d1(x, y) = a^i x + b^i y.
struct KoszulStage {
  RingId ring;
  Var a;
  Var b;
  std::uint32_t stage;
  oracle::Window window;
  ModulePtr k0;
  ModulePtr k1;
  ModulePtr k2;
  ModuleMap d1;
  ModuleMap d2;
  Homology h0;
  Homology h1;
  Homology h2;
  bool d_squared_zero = false;
};

KoszulStage koszul_pair(const Context &ctx, Var a, Var b, std::uint32_t i);

/// Ann(a^i) / b^i Ann(a^i) on the K1 module of K(a^i).
struct H0OfH1 {
  ModulePtr module;
  Homology homology;
};
H0OfH1 h0_of_h1(const Context &ctx, Var a, Var b, std::uint32_t i);

/// The row 0 -> H0(b; H1(a)) -> H1(a, b) -> H1(b; H0(a)) -> 0 at stage i.
struct SesReport {
  std::uint32_t stage = 0;
  bool injective = false;
  bool middle_exact = false;
  bool surjective = false;
  bool dims_match = false;
  std::size_t dim_left = 0;
  std::size_t dim_middle = 0;
  std::size_t dim_right = 0;

  bool exact() const {
    return injective && middle_exact && surjective && dims_match;
  }
};
SesReport ses_row_check(const Context &ctx, Var a, Var b, std::uint32_t i);

/// Homology of one stage of a system, on its own chain module.
struct SystemStage {
  HomologySystem system;
  std::uint32_t stage;
  ModulePtr module;
  Homology homology;
};

SystemStage build_stage(const Context &ctx, const HomologySystem &sys,
                        std::uint32_t i);
/// Chain-level transition from stage j to stage i < j: identity on K0,
/// a^(j-i) (resp. b^(j-i)) on the K1 generators.
ModuleMap transition_map(const SystemStage &from, const SystemStage &to);

struct TransitionResult {
  bool zero = true;
  std::optional<SparseVec> witness; // over the source module
  SparseVec image;                  // over the target module
};

/// Whether H(stage j) -> H(stage i) vanishes. Among cycles with a nonzero
/// image the witness has the least complex degree; ties go to the latest
/// pivot. Throws PreconditionError unless i < j.
TransitionResult transition_zero(const SystemStage &from,
                                 const SystemStage &to);
TransitionResult transition_zero(const Context &ctx, const HomologySystem &sys,
                                 std::uint32_t j, std::uint32_t i);

struct TransitionRecord {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  bool zero = true;
  std::vector<GradedPoly> witness;
  std::vector<GradedPoly> image;
  std::string witness_text;
  std::string image_text;
  Degree witness_degree{};
  /// Recomputed in a window enlarged by 2 in every direction.
  bool replay_nonzero = false;
  /// The image computed with ring-core arithmetic is nonzero.
  bool closed_form_nonzero = false;
};

struct TargetRecord {
  std::uint32_t target = 0;
  std::optional<std::uint32_t> least_zero_source;
  std::vector<TransitionRecord> transitions;
};

enum class Verdict { ProZeroUpToWindow, NotProZeroWitnessed, Inconclusive };
std::string verdict_name(Verdict v);

struct ProZeroReport {
  RingId ring;
  HomologySystem system;
  std::uint32_t max_stage = 0;
  oracle::Window window;
  std::vector<TargetRecord> targets;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::uint32_t> uniform_gap;
  /// Every witness stayed nonzero on replay.
  bool replay_ok = true;

  const TransitionRecord *find(std::uint32_t from, std::uint32_t to) const;
};

/// Stages n = 2..maxStage-1 are targets, sources m = n+1..maxStage.
ProZeroReport pro_zero_test(const oracle::Presentation &pres,
                            const HomologySystem &sys,
                            std::uint32_t max_stage,
                            const oracle::Window &window);
/// Dt = Du = maxStage + 2, Mx = max(12, Dt + 2), clamped to the ring.
oracle::Window default_koszul_window(const RingId &ring,
                                     std::uint32_t max_stage);

} // namespace elkik::koszul

#pragma once

// One verifier per statement about the counter-example rings. Every
// verifier checks a finite window with both the closed-form arithmetic and
// the raw-presentation oracle and returns a ClaimReport.

#include "elkik/oracle.hpp"
#include "elkik/ring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace elkik::claims {

enum class ClaimId {
  Basis,
  AnnT,
  Essential,
  AnnTU,
  KernelI0,
  BoundedE2,
  Nwkpr,
  GsDemo,
  ApproxFailE1,
  ApproxFailE2,
  XiWitness,
  RemarkWpr,
};

const std::vector<ClaimId> &all_claims();
std::string claim_name(ClaimId id);
std::optional<ClaimId> parse_claim(std::string_view text);

enum class Status { Verified, Falsified, Inconclusive };
std::string status_name(Status s);

using ParamValue = std::variant<std::int64_t, std::string>;

struct ClaimReport {
  static constexpr const char *schema_version = "1.0";

  ClaimId id = ClaimId::Basis;
  std::string ring;
  std::vector<std::pair<std::string, ParamValue>> params;
  Status status = Status::Verified;
  std::vector<std::string> witnesses;
  std::vector<std::string> inventory;
  std::string notes;
  std::optional<double> timing_ms;
};

/// Shared knobs. Unset window fields fall back to per-claim defaults
/// (Dt = Du = 8, Mx = 12; Koszul claims use maxStage + 2).
struct Config {
  std::uint32_t m = 2;
  std::uint32_t n = 0; // 0: same as m
  std::optional<std::uint32_t> dt;
  std::optional<std::uint32_t> du;
  std::optional<std::uint32_t> mx;
  std::uint32_t prec = 8;
  std::uint32_t max_stage = 8;
  std::uint32_t xi_max = 6;
  Field field;
  /// Indices j of generators x_j t^(m+j) removed from the oracle's
  /// presentation (mutation testing). Closed forms are unaffected.
  std::vector<std::uint32_t> dropped_n_generators;

  oracle::Presentation presentation(const RingId &ring) const;
  oracle::Window window(const RingId &ring) const;
  oracle::Window koszul_window(const RingId &ring) const;
};

ClaimReport verify_basis(const Config &cfg);
ClaimReport verify_ann_t(const Config &cfg);
ClaimReport verify_essential(const Config &cfg);
ClaimReport verify_ann_tu(const Config &cfg);
ClaimReport verify_kernel_I0(const Config &cfg);
ClaimReport verify_bounded_E2(const Config &cfg);
ClaimReport verify_nwkpr(const Config &cfg);
ClaimReport demo_gs(const Config &cfg);
ClaimReport demo_approx_failure_E1(const Config &cfg);
ClaimReport demo_approx_failure_E2(const Config &cfg);
ClaimReport verify_xi_witnesses(const Config &cfg);
ClaimReport verify_remark_wpr(const Config &cfg);

ClaimReport run_claim(ClaimId id, const Config &cfg);

/// Oracle Ann_R(t^dt u^du) against the closed form, for dt <= max_dt and
/// du <= max_du.
ClaimReport verify_ann(const RingId &ring, std::uint32_t max_dt,
                       std::uint32_t max_du, const Config &cfg);

/// Least l such that every monomial t^a u^b with a + b = l kills the
/// windowed torsion subspace; 0 when the subspace is zero.
std::optional<std::uint32_t> torsion_killing_exponent(
    const oracle::Presentation &pres, const oracle::Window &w);

/// True when some row of `s` reaches x-index or y-exponent mx.
bool touches_boundary(const oracle::WindowSpace &space, const Subspace &s);

} // namespace elkik::claims

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "elkik/claims.hpp"
#include "elkik/cli.hpp"
#include "elkik/fuzz.hpp"
#include "elkik/koszul.hpp"
#include "elkik/parse.hpp"
#include "elkik/print.hpp"

#include "generators.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace elkik;
using claims::Config;
using claims::Status;

namespace {

constexpr double kGoldenSuiteSeconds = 60.0;
constexpr std::size_t kProductsPerRing = 500;
constexpr std::uint64_t kProductSeed = 20240601;
constexpr int kRoundTrips = 1000;
constexpr std::uint64_t kRoundTripSeed = 4242;

struct Outcome {
  bool pass;
  std::string detail;
};

GradedPoly mono(const RingId &ring, Degree d, RBasisIndex idx) {
  return GradedPoly::monomial(ring, d, idx);
}

GradedPoly t_minus_y(const RingId &ring) {
  return mono(ring, {1, 0}, RBasisIndex::one()) - mono(ring, {}, RBasisIndex::y(1));
}

bool verified(const claims::ClaimReport &r) { return r.status == Status::Verified; }

Outcome golden_suite() {
  auto once = [](std::string &out) {
    std::ostringstream o, e;
    const int code = cli::run({"verify", "all", "--format", "json"}, o, e);
    out = o.str();
    return code;
  };
  const auto t0 = std::chrono::steady_clock::now();
  std::string a, b;
  const int code = once(a);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  once(b);
  const auto doc = cli::Json::parse(a);
  std::size_t ok = 0;
  for (const auto &r : doc)
    ok += r["status"] == "verified";
  std::ostringstream d;
  d << ok << "/" << doc.size() << " verified in " << secs << " s, runs "
    << (a == b ? "byte-identical" : "DIFFER");
  return {code == 0 && doc.size() == 12 && ok == 12 && a == b &&
              secs < kGoldenSuiteSeconds,
          d.str()};
}

Outcome annihilator_tables() {
  const Config cfg;
  const auto e1 = claims::verify_ann(RingId::e1(2), 10, 0, cfg);
  const auto e2 = claims::verify_ann(RingId::e2(), 8, 3, cfg);
  return {verified(e1) && verified(e2),
          "E1 dt<=10: " + claims::status_name(e1.status) +
              ", E2 dt<=8 du<=3: " + claims::status_name(e2.status)};
}

Outcome essential_window() {
  const auto ring = RingId::e1(2);
  const auto pres = oracle::Presentation::of(ring);
  const auto w = oracle::Window::for_ring(ring, 8, 0, 12);
  const auto dom = oracle::WindowSpace::make(pres, w);
  const auto K = oracle::kernel(oracle::mul_map(pres, t_minus_y(ring), dom));
  bool no_constant = true;
  for (const auto &r : K.rows())
    for (const auto &[k, c] : r)
      no_constant = no_constant && dom->basis().at(k).degree() != Degree{0, 0};
  const bool has_x0t = K.contains(dom->vectorize(mono(ring, {1, 0}, RBasisIndex::x(0))));
  const bool clean = !claims::touches_boundary(*dom, K);
  Config cfg;
  cfg.dt = 8;
  cfg.mx = 12;
  const auto rep = claims::verify_essential(cfg);
  return {!K.is_zero() && has_x0t && no_constant && clean && verified(rep),
          "rank " + std::to_string(K.rank()) + ", x0*t " +
              (has_x0t ? "in kernel" : "MISSING") + ", boundary " +
              (clean ? "clean" : "touched") + ", report " +
              claims::status_name(rep.status)};
}

Outcome approximation_failure() {
  const Config cfg;
  const auto e1 = claims::demo_approx_failure_E1(cfg);
  const auto e2 = claims::demo_approx_failure_E2(cfg);
  const auto alpha = alpha_hat(RingId::e1(2), 8);
  const auto res = apply_system(SystemId::for_ring(RingId::e1(2)), alpha);
  const bool direct = res[0].value.is_zero() && res[1].exact_zero &&
                      !alpha.body().component({0, 0}).is_zero();
  return {verified(e1) && verified(e2) && direct,
          "E1: " + claims::status_name(e1.status) + ", E2: " +
              claims::status_name(e2.status) + ", obstruction x0"};
}

Outcome xi_witnesses() {
  Config cfg;
  cfg.xi_max = 6;
  const auto r = claims::verify_xi_witnesses(cfg);
  return {verified(r), std::to_string(r.witnesses.size()) + " witnesses, " +
                           claims::status_name(r.status)};
}

Outcome bounded_torsion() {
  Config cfg;
  cfg.dt = 6;
  cfg.du = 6;
  const auto r = claims::verify_bounded_E2(cfg);
  return {verified(r), "Dt=Du=6: " + claims::status_name(r.status)};
}

Outcome mixed_system() {
  const auto r = claims::verify_nwkpr(Config{});
  return {verified(r), std::to_string(r.witnesses.size()) +
                           " witnesses x1..x6, rows 2..6 exact: " +
                           claims::status_name(r.status)};
}

Outcome controls() {
  const auto gs = RingId::gs();
  const auto pres = oracle::Presentation::of(gs);
  const auto K = oracle::kernel(
      oracle::mul_map(pres, t_minus_y(gs), oracle::Window::for_ring(gs, 8, 0, 16)));
  const auto ctrl = RingId::ctrl();
  const auto rep = koszul::pro_zero_test(oracle::Presentation::of(ctrl),
                                         koszul::HomologySystem::parse("H1(t)"), 8,
                                         koszul::default_koszul_window(ctrl, 8));
  const auto wpr = claims::verify_remark_wpr(Config{});
  const bool ctrl_ok =
      rep.verdict == koszul::Verdict::ProZeroUpToWindow && rep.uniform_gap == 2u;
  return {K.is_zero() && ctrl_ok && verified(wpr),
          std::string("GS kernel ") + (K.is_zero() ? "0" : "NONZERO") +
              ", CTRL " + koszul::verdict_name(rep.verdict) + ", table " +
              claims::status_name(wpr.status)};
}

Outcome dual_implementation() {
  std::size_t bad = 0, checked = 0;
  for (const auto &ring : gen::all_rings()) {
    const auto r = fuzz::cross_check_products(oracle::Presentation::of(ring),
                                              kProductSeed, kProductsPerRing);
    bad += r.disagreements;
    checked += r.checked;
  }
  gen::Rng rng(kRoundTripSeed);
  int trips = 0, trip_bad = 0;
  const auto rings = gen::all_rings();
  for (int i = 0; i < kRoundTrips; ++i) {
    const auto &ring = rings[static_cast<std::size_t>(i) % rings.size()];
    const auto p = gen::graded(rng, ring, {5, 3, 30, 6, 1000, 12});
    ++trips;
    trip_bad += !(parse_element(print_element(p), ring) == p);
  }
  return {bad == 0 && trip_bad == 0 && trips == kRoundTrips,
          std::to_string(checked) + " products (" + std::to_string(bad) +
              " disagree), " + std::to_string(trips) + " round-trips (" +
              std::to_string(trip_bad) + " differ)"};
}

Outcome mutation() {
  Config cfg;
  cfg.dropped_n_generators = {0};
  const auto a = claims::verify_ann_t(cfg);
  const auto e = claims::verify_essential(cfg);
  const auto f = claims::demo_approx_failure_E1(cfg);
  const bool flipped = a.status == Status::Falsified ||
                       e.status == Status::Falsified ||
                       f.status == Status::Falsified;
  return {flipped, "without x0*t^2: ann " + claims::status_name(a.status) +
                       ", essential " + claims::status_name(e.status) +
                       ", approx " + claims::status_name(f.status)};
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"golden suite", golden_suite},
      {"annihilator tables", annihilator_tables},
      {"kernel of (t - y) on E1", essential_window},
      {"approximation failure", approximation_failure},
      {"unbounded torsion witnesses", xi_witnesses},
      {"bounded torsion in E2", bounded_torsion},
      {"mixed system not pro-zero", mixed_system},
      {"controls", controls},
      {"dual implementation fuzz", dual_implementation},
      {"mutation sensitivity", mutation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << "  "
              << criteria[i].first << ": " << o.detail << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}

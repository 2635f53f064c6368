#include "elkik/cli.hpp"

#include "elkik/errors.hpp"
#include "elkik/fuzz.hpp"
#include "elkik/koszul.hpp"
#include "elkik/parse.hpp"
#include "elkik/print.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace elkik::cli {

namespace {

struct Options {
  std::string command;
  std::string ring = "E1";
  bool ring_given = false;
  std::optional<std::uint32_t> dt, du, mx;
  std::uint32_t prec = 8;
  std::uint32_t max_stage = 8;
  std::optional<std::uint32_t> m, n;
  std::uint32_t xi_max = 6;
  std::string field = "q";
  std::string format = "text";
  std::string out;
  std::string system;
  std::uint64_t seed = 1;
  std::size_t count = 500;
  bool timing = false;
  std::vector<std::uint32_t> dropped;
  std::vector<std::string> positional;
};

Field parse_field(const std::string &text) {
  if (text == "q")
    return {};
  if (text.rfind("fp:", 0) == 0) {
    const auto digits = text.substr(3);
    if (digits.empty() || digits.size() > 18 ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidParameter("bad field '" + text + "'");
    Field f{std::stoull(digits)};
    f.validate();
    return f;
  }
  throw InvalidParameter("bad field '" + text + "' (expected q or fp:<prime>)");
}

claims::Config make_config(const Options &o, const RingId &ring) {
  claims::Config cfg;
  if (o.ring_given && ring.kind == RingId::Kind::E1)
    cfg.m = ring.m;
  if (o.m)
    cfg.m = *o.m;
  if (o.n)
    cfg.n = *o.n;
  cfg.dt = o.dt;
  cfg.du = o.du;
  cfg.mx = o.mx;
  cfg.prec = o.prec;
  cfg.max_stage = o.max_stage;
  cfg.xi_max = o.xi_max;
  cfg.field = parse_field(o.field);
  cfg.dropped_n_generators = o.dropped;
  if (cfg.m == 0)
    throw InvalidParameter("m must be at least 1");
  return cfg;
}

Json window_json(const oracle::Window &w) {
  return Json{{"dt", w.dt}, {"du", w.du}, {"mx", w.mx}};
}

Json envelope(const std::string &command, const RingId &ring, Json params,
              Json result) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"ring", ring.name()},
              {"params", std::move(params)},
              {"result", std::move(result)}};
}

Json strings(const std::vector<std::string> &v) {
  Json a = Json::array();
  for (const auto &s : v)
    a.push_back(s);
  return a;
}

int status_exit(claims::Status s) {
  switch (s) {
  case claims::Status::Verified:
    return kExitOk;
  case claims::Status::Falsified:
    return kExitFalsified;
  case claims::Status::Inconclusive:
    return kExitInconclusive;
  }
  return kExitOk;
}

int combine(int a, int b) {
  if (a == kExitFalsified || b == kExitFalsified)
    return kExitFalsified;
  return std::max(a, b);
}

struct Outcome {
  Json doc;
  int code = kExitOk;
};

Outcome cmd_verify(const Options &o) {
  if (o.positional.size() != 1)
    throw InvalidParameter("verify takes one claim id or 'all'");
  const auto ring = o.ring_given ? parse_ring(o.ring) : RingId::e1(2);
  const auto cfg = make_config(o, ring);
  auto one = [&](claims::ClaimId id) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = claims::run_claim(id, cfg);
    r.params.emplace_back("field", cfg.field.name());
    r.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return r;
  };
  const auto &which = o.positional.front();
  if (which == "all") {
    Outcome out{Json::array(), kExitOk};
    for (auto id : claims::all_claims()) {
      const auto r = one(id);
      out.code = combine(out.code, status_exit(r.status));
      out.doc.push_back(report_json(r, o.timing));
    }
    return out;
  }
  const auto id = claims::parse_claim(which);
  if (!id)
    throw InvalidParameter("unknown claim '" + which + "'");
  const auto r = one(*id);
  return {report_json(r, o.timing), status_exit(r.status)};
}

Outcome cmd_eval(const Options &o) {
  if (o.positional.empty())
    throw InvalidParameter("eval needs at least one expression");
  const auto ring = parse_ring(o.ring);
  const auto field = parse_field(o.field);
  Json values = Json::array();
  for (const auto &e : o.positional)
    values.push_back(print_element(parse_element(e, ring, field)));
  Json params{{"field", field.name()}, {"inputs", strings(o.positional)}};
  return {envelope("eval", ring, std::move(params), Json{{"values", values}})};
}

Outcome cmd_annihilator(const Options &o) {
  if (!o.positional.empty())
    throw InvalidParameter("annihilator takes no positional arguments");
  const auto ring = parse_ring(o.ring);
  if (!ring.has_t())
    throw InvalidParameter("ring " + ring.name() + " has no t");
  const auto cfg = make_config(o, ring);
  const std::uint32_t dt = o.dt.value_or(0);
  const std::uint32_t du = ring.has_u() ? o.du.value_or(0) : 0;
  if (o.du && *o.du > 0 && !ring.has_u())
    throw InvalidParameter("ring " + ring.name() + " has no u");
  const auto w = oracle::Window::for_ring(
      ring, dt, du, o.mx.value_or(std::max<std::uint32_t>(12, dt + 2)));
  const auto pres = cfg.presentation(ring);
  const auto space = oracle::r_slice(pres, w);
  const auto got = oracle::annihilator_oracle(pres, dt, du, w);
  std::vector<SparseVec> vecs;
  Json closed = Json::array();
  for (auto idx : ann_formula(ring, dt, du).up_to(w.mx)) {
    const auto p = GradedPoly::monomial(ring, {}, idx);
    vecs.push_back(space->vectorize(p));
    closed.push_back(print_element(p));
  }
  const bool agrees = got == Subspace::span(space->basis().size(), vecs);
  Json basis = Json::array();
  for (const auto &r : got.rows())
    basis.push_back(space->format(r));
  Json params{{"dt", dt}, {"du", du}, {"mx", w.mx}, {"field", cfg.field.name()}};
  Json result{{"basis", basis}, {"closed_form", closed}, {"agrees", agrees}};
  return {envelope("annihilator", ring, std::move(params), std::move(result)),
          agrees ? kExitOk : kExitFalsified};
}

Outcome cmd_kernel(const Options &o) {
  if (o.positional.empty())
    throw InvalidParameter("kernel needs at least one expression");
  const auto ring = parse_ring(o.ring);
  const auto cfg = make_config(o, ring);
  const auto w = cfg.window(ring);
  const auto pres = cfg.presentation(ring);
  auto domain = oracle::WindowSpace::make(pres, w);
  std::vector<oracle::LinMap> maps;
  for (const auto &e : o.positional)
    maps.push_back(oracle::mul_map(pres, parse_element(e, ring, cfg.field), domain));
  const auto K = oracle::kernel(maps);
  Json basis = Json::array();
  for (const auto &r : K.rows())
    basis.push_back(domain->format(r));
  const bool touch = claims::touches_boundary(*domain, K);
  Json params{{"window", window_json(w)},
              {"field", cfg.field.name()},
              {"inputs", strings(o.positional)}};
  Json result{{"rank", K.rank()}, {"basis", basis}, {"boundary_touch", touch}};
  return {envelope("kernel", ring, std::move(params), std::move(result)),
          touch ? kExitInconclusive : kExitOk};
}

Outcome cmd_prozero(const Options &o) {
  if (!o.positional.empty())
    throw InvalidParameter("prozero takes no positional arguments");
  const auto ring = parse_ring(o.ring);
  const auto cfg = make_config(o, ring);
  const auto sys = koszul::HomologySystem::parse(
      o.system.empty() ? (ring.has_u() ? "H0(u;H1(t))" : "H1(t)") : o.system);
  const auto w = cfg.koszul_window(ring);
  const auto rep =
      koszul::pro_zero_test(cfg.presentation(ring), sys, cfg.max_stage, w);

  Json targets = Json::array();
  for (const auto &t : rep.targets) {
    Json trans = Json::array();
    for (const auto &r : t.transitions) {
      Json j{{"from", r.from}, {"zero", r.zero}};
      if (!r.zero) {
        j["witness"] = r.witness_text;
        j["image"] = r.image_text;
        j["witness_degree"] = Json{{"dt", r.witness_degree.dt},
                                   {"du", r.witness_degree.du}};
        j["replay_nonzero"] = r.replay_nonzero;
        j["closed_form_nonzero"] = r.closed_form_nonzero;
      }
      trans.push_back(std::move(j));
    }
    Json tj{{"target", t.target}};
    tj["least_zero_source"] =
        t.least_zero_source ? Json(*t.least_zero_source) : Json(nullptr);
    tj["transitions"] = std::move(trans);
    targets.push_back(std::move(tj));
  }
  Json params{{"system", sys.str()},
              {"max_stage", cfg.max_stage},
              {"window", window_json(w)},
              {"field", cfg.field.name()}};
  Json result{{"verdict", koszul::verdict_name(rep.verdict)}};
  result["uniform_gap"] = rep.uniform_gap ? Json(*rep.uniform_gap) : Json(nullptr);
  result["replay_ok"] = rep.replay_ok;
  result["targets"] = std::move(targets);
  const int code =
      rep.verdict == koszul::Verdict::Inconclusive ? kExitInconclusive : kExitOk;
  return {envelope("prozero", ring, std::move(params), std::move(result)), code};
}

Outcome cmd_fuzz(const Options &o) {
  if (!o.positional.empty())
    throw InvalidParameter("fuzz takes no positional arguments");
  const auto ring = parse_ring(o.ring);
  const auto cfg = make_config(o, ring);
  const auto r = fuzz::cross_check_products(cfg.presentation(ring), o.seed, o.count);
  Json params{{"seed", o.seed}, {"count", o.count}, {"field", cfg.field.name()}};
  Json result{{"checked", r.checked}, {"disagreements", r.disagreements}};
  if (r.first_bad)
    result["first_disagreement"] =
        Json::array({print_element(r.first_bad->first),
                     print_element(r.first_bad->second)});
  return {envelope("fuzz", ring, std::move(params), std::move(result)),
          r.disagreements ? kExitFalsified : kExitOk};
}

std::string scalar_text(const Json &v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string render_report(const Json &r) {
  std::ostringstream s;
  s << r["claim_id"].get<std::string>() << " [" << r["ring"].get<std::string>()
    << "] " << r["status"].get<std::string>() << "\n";
  s << "  params:";
  for (const auto &[k, v] : r["params"].items())
    s << " " << k << "=" << scalar_text(v);
  s << "\n";
  for (const auto &w : r["witnesses"])
    s << "  witness: " << w.get<std::string>() << "\n";
  for (const auto &c : r["inventory"])
    s << "  check: " << c.get<std::string>() << "\n";
  if (!r["notes"].get<std::string>().empty())
    s << "  note: " << r["notes"].get<std::string>() << "\n";
  if (r.contains("timing_ms"))
    s << "  timing: " << r["timing_ms"].dump() << " ms\n";
  return s.str();
}

std::string join(const Json &a, const char *sep) {
  std::string out;
  for (const auto &v : a) {
    if (!out.empty())
      out += sep;
    out += v.get<std::string>();
  }
  return out;
}

std::string render_command(const Json &d) {
  const auto cmd = d["command"].get<std::string>();
  const auto &res = d["result"];
  std::ostringstream s;
  if (cmd == "eval") {
    for (const auto &v : res["values"])
      s << v.get<std::string>() << "\n";
  } else if (cmd == "annihilator") {
    s << (res["basis"].empty() ? "0" : join(res["basis"], ", ")) << "\n";
    if (!res["agrees"].get<bool>())
      s << "closed form disagrees: "
        << (res["closed_form"].empty() ? "0" : join(res["closed_form"], ", "))
        << "\n";
  } else if (cmd == "kernel") {
    if (res["basis"].empty())
      s << "(trivial)\n";
    for (const auto &v : res["basis"])
      s << v.get<std::string>() << "\n";
    if (res["boundary_touch"].get<bool>())
      s << "inconclusive-window: a basis vector reaches the window boundary\n";
  } else if (cmd == "prozero") {
    s << d["params"]["system"].get<std::string>() << " over " << d["ring"].get<std::string>()
      << ": " << res["verdict"].get<std::string>();
    if (!res["uniform_gap"].is_null())
      s << " (gap " << res["uniform_gap"].dump() << ")";
    s << "\n";
    for (const auto &t : res["targets"])
      for (const auto &tr : t["transitions"])
        if (!tr["zero"].get<bool>())
          s << "  stage " << tr["from"].dump() << " -> " << t["target"].dump()
            << ": " << tr["witness"].get<std::string>() << " |-> "
            << tr["image"].get<std::string>() << "\n";
  } else if (cmd == "fuzz") {
    s << res["checked"].dump() << " products, " << res["disagreements"].dump()
      << " disagreements\n";
    if (res.contains("first_disagreement"))
      s << "  first: " << join(res["first_disagreement"], " * ") << "\n";
  }
  return s.str();
}

} // namespace

Json report_json(const claims::ClaimReport &r, bool with_timing) {
  Json params = Json::object();
  for (const auto &[k, v] : r.params)
    std::visit([&](const auto &x) { params[k] = x; }, v);
  Json j{{"schema_version", claims::ClaimReport::schema_version},
         {"claim_id", claims::claim_name(r.id)},
         {"ring", r.ring},
         {"params", std::move(params)},
         {"status", claims::status_name(r.status)},
         {"witnesses", strings(r.witnesses)},
         {"inventory", strings(r.inventory)},
         {"notes", r.notes}};
  if (with_timing && r.timing_ms)
    j["timing_ms"] = *r.timing_ms;
  return j;
}

std::string render_text(const Json &doc) {
  if (doc.is_array()) {
    std::string out;
    for (const auto &r : doc)
      out += render_text(r);
    return out;
  }
  if (doc.contains("claim_id"))
    return render_report(doc);
  return render_command(doc);
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  Options o;
  CLI::App app{"Windowed verification of annihilator and Koszul claims",
               "elkik"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--ring", o.ring, "R, GS, E1, E1[m=N], E2 or CTRL")
      ->each([&](const std::string &) { o.ring_given = true; });
  app.add_option("--dt", o.dt, "window t-degree (annihilator: t-exponent)");
  app.add_option("--du", o.du, "window u-degree (annihilator: u-exponent)");
  app.add_option("--mx", o.mx, "bound on y-exponents and x-indices");
  app.add_option("--prec", o.prec, "precision N of alpha_hat");
  app.add_option("--max-stage", o.max_stage, "largest stage of inverse systems");
  app.add_option("--m", o.m, "E1 family parameter");
  app.add_option("--n", o.n, "E1 system exponent (default m)");
  app.add_option("--xi-max", o.xi_max, "largest torsion witness index");
  app.add_option("--field", o.field, "q or fp:<prime>");
  app.add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", o.out, "write output to a file");
  app.add_option("--system", o.system, "H1(t), H0(u;H1(t)) or H1(t,u)");
  app.add_option("--seed", o.seed, "seed for randomized commands");
  app.add_option("--count", o.count, "number of random products (fuzz)");
  app.add_flag("--timing", o.timing, "include timing_ms in reports");
  app.add_option("--drop-generator", o.dropped,
                 "remove x_j*t^(m+j) from the oracle presentation");

  const std::vector<std::pair<const char *, const char *>> cmds = {
      {"verify", "run a claim verifier (<claim id> or all)"},
      {"eval", "evaluate expressions to canonical form"},
      {"annihilator", "annihilator of t^dt u^du in the coefficient ring"},
      {"kernel", "common kernel of multiplication maps on the window"},
      {"prozero", "pro-zero test of an inverse system of Koszul homology"},
      {"fuzz", "random products: closed form against the oracle"},
  };
  for (const auto &[name, help] : cmds) {
    auto *sub = app.add_subcommand(name, help);
    sub->add_option("args", o.positional);
    sub->final_callback([&o, name = std::string(name)] { o.command = name; });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    std::ostringstream tmp;
    const int code = app.exit(e, tmp, tmp);
    (code == 0 ? out : err) << tmp.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  Outcome res;
  try {
    if (o.command == "verify")
      res = cmd_verify(o);
    else if (o.command == "eval")
      res = cmd_eval(o);
    else if (o.command == "annihilator")
      res = cmd_annihilator(o);
    else if (o.command == "kernel")
      res = cmd_kernel(o);
    else if (o.command == "prozero")
      res = cmd_prozero(o);
    else
      res = cmd_fuzz(o);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParameter &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedRing &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RingMismatch &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error &e) {
    err << "window error: " << e.what() << "\n";
    return kExitWindow;
  }

  const auto body =
      o.format == "json" ? res.doc.dump(2) + "\n" : render_text(res.doc);
  if (o.out.empty()) {
    out << body;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "cannot write " << o.out << "\n";
      return kExitUsage;
    }
    f << body;
  }
  return res.code;
}

} // namespace elkik::cli

#include "exm/audit.hpp"
#include "exm/base_space.hpp"
#include "exm/cobweb.hpp"
#include "exm/error.hpp"
#include "exm/extremal.hpp"
#include "exm/hedgehog.hpp"
#include "exm/invlimit.hpp"
#include "exm/oracles.hpp"
#include "exm/report_json.hpp"
#include "exm/space_config.hpp"
#include "exm/suite.hpp"
#include "exm/zcon.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using exm::Rat;
using exm::report::Json;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

struct CommonArgs {
  std::string space_kind;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_space = true) {
  if (with_space) {
    cmd->add_option("--space", args.space_kind, "space kind (with documented defaults)");
    cmd->add_option("--config", args.config_path, "space configuration file");
  }
  cmd->add_option("--seed", args.seed, "sampler seed")
      ->envname("EXOTIC_METRICS_SEED")
      ->default_val(0);
  cmd->add_option("--out", args.out_path, "report output path");
  cmd->add_option("--workers", args.workers, "audit worker threads")->default_val(1);
}

exm::cfg::SpaceSpec resolve_space(const CommonArgs& args) {
  if (!args.config_path.empty()) {
    auto spec = exm::cfg::load_config_file(args.config_path);
    if (!args.space_kind.empty() && args.space_kind != spec.kind)
      throw exm::parse_error("--space '" + args.space_kind + "' does not match config kind '" +
                             spec.kind + "'");
    return spec;
  }
  if (!args.space_kind.empty()) return exm::cfg::default_spec(args.space_kind);
  throw exm::parse_error("give --space <kind> or --config <file>");
}

// ---- dist -------------------------------------------------------------

exm::hedgehog::Point parse_hedgehog_point(const exm::hedgehog::Space& space,
                                          const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw exm::parse_error("bad hedgehog point (want <spike>:<t>): " + text);
  std::uint32_t spike = 0;
  try {
    spike = static_cast<std::uint32_t>(std::stoul(text.substr(0, colon)));
  } catch (const std::exception&) {
    throw exm::parse_error("bad spike id in: " + text);
  }
  auto t = exm::rat_parse(text.substr(colon + 1));
  if (!t) throw exm::parse_error("bad spike parameter in: " + text);
  return exm::hedgehog::make_point(space, spike, *t);
}

exm::cobweb::IntPoint parse_cobweb_point(const exm::cobweb::Space& space,
                                         const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  auto id = [](const std::string& s) {
    try {
      return static_cast<std::uint32_t>(std::stoul(s));
    } catch (const std::exception&) {
      throw exm::parse_error("bad vortex id '" + s + "'");
    }
  };
  auto in_universe = [&space](std::uint32_t v) {
    for (auto u : space.vortices)
      if (u == v) return true;
    return false;
  };
  if (parts.size() == 2 && parts[0] == "v") {
    const auto v = id(parts[1]);
    if (!in_universe(v))
      throw exm::validation_error("vortex " + parts[1] + " not in the configured universe");
    return exm::cobweb::vortex(v);
  }
  if (parts.size() == 4 && parts[0] == "i") {
    const auto u = id(parts[1]);
    const auto v = id(parts[2]);
    if (!in_universe(u) || !in_universe(v))
      throw exm::validation_error("thread endpoints not in the configured universe");
    auto t = exm::rat_parse(parts[3]);
    if (!t) throw exm::parse_error("bad thread parameter in: " + text);
    return exm::cobweb::make_point(u, v, *t, space.eps);
  }
  throw exm::parse_error("bad cobweb point (want v:<id> or i:<u>:<v>:<t>): " + text);
}

int run_dist(const CommonArgs& args, const std::string& lit1, const std::string& lit2,
             bool witness, bool truncated) {
  const auto spec = resolve_space(args);
  Rat value;
  std::optional<Json> witness_json;

  if (exm::cfg::is_base_kind(spec.kind)) {
    const auto space = exm::cfg::build_base(spec);
    value = exm::base::base_distance(space, exm::base::parse_point(space, lit1),
                                     exm::base::parse_point(space, lit2));
  } else if (spec.kind == "hedgehog") {
    const auto space = exm::cfg::build_hedgehog(spec);
    value = exm::hedgehog::distance(space, parse_hedgehog_point(space, lit1),
                                    parse_hedgehog_point(space, lit2));
  } else if (spec.kind == "cobweb") {
    const auto space = exm::cfg::build_cobweb(spec);
    const auto p = parse_cobweb_point(space, lit1);
    const auto q = parse_cobweb_point(space, lit2);
    value = exm::cobweb::distance(space.eps, p, q);
    if (witness) {
      Json path = Json::array();
      for (const auto& b : exm::cobweb::witness_path(space.eps, p, q))
        path.push_back(exm::cobweb::format_point(b));
      witness_json = std::move(path);
    }
  } else if (spec.kind == "zcon") {
    const auto space = exm::cfg::build_zcon(spec);
    const auto p = exm::zcon::parse_zpoint(space, lit1);
    const auto q = exm::zcon::parse_zpoint(space, lit2);
    value = truncated ? exm::zcon::z_distance_truncated(space, p, q)
                      : exm::zcon::z_distance(space, p, q);
  } else if (spec.kind == "extremal") {
    value = exm::extremal::e_distance(exm::extremal::parse_point(lit1),
                                      exm::extremal::parse_point(lit2));
  } else if (spec.kind == "tower") {
    const auto tower = exm::cfg::build_tower(spec);
    auto parse = [&tower](const std::string& text) {
      Json j = Json::parse(text, nullptr, false);
      if (j.is_discarded()) throw exm::parse_error("bad tower point JSON: " + text);
      return exm::invlim::as_limit(tower, exm::report::level_point_from_json(tower, j));
    };
    value = exm::invlim::limit_distance(tower, parse(lit1), parse(lit2));
  } else {
    throw exm::parse_error("distance not supported for kind '" + spec.kind + "'");
  }

  if (witness && !witness_json)
    throw exm::parse_error("--witness is available for cobweb spaces only");
  std::cout << exm::rat_to_string(value) << "\n";
  if (witness_json) std::cout << witness_json->dump() << "\n";
  return kExitOk;
}

// ---- audit ------------------------------------------------------------

struct AuditArgs {
  std::string audit;
  std::uint64_t n = 0;  // 0: per-audit default
  unsigned depth = 20;
  std::string chain_eps = "1/8";
  std::uint32_t grid = 64;
  std::string from_report;
};

exm::audit::AuditReport dispatch_audit(const exm::cfg::SpaceSpec& spec, const AuditArgs& au,
                                       std::uint64_t seed, int workers) {
  using namespace exm;
  const std::string kind = spec.kind;
  auto oracle = [&]() -> audit::SpaceOracle {
    if (cfg::is_base_kind(kind)) return audit::make_oracle(cfg::build_base(spec));
    if (kind == "hedgehog") return audit::make_oracle(cfg::build_hedgehog(spec));
    if (kind == "cobweb") return audit::make_oracle(cfg::build_cobweb(spec));
    if (kind == "zcon") return audit::make_oracle(cfg::build_zcon(spec));
    if (kind == "tower") return audit::make_oracle(cfg::build_tower(spec));
    if (kind == "extremal") return audit::make_extremal_oracle(spec.grid_log2);
    throw parse_error("no oracle for kind '" + kind + "'");
  };

  if (au.audit == "metric") return audit::audit_metric(oracle(), au.n ? au.n : 10000, seed, workers);
  if (au.audit == "ultrametric")
    return audit::audit_ultrametric(oracle(), au.n ? au.n : 10000, seed, workers);
  if (au.audit == "distinct")
    return audit::audit_distinct_distances(oracle(), au.n ? au.n : 64, seed);
  if (au.audit == "lipschitz") {
    if (kind == "zcon") {
      auto sp = std::make_shared<const zcon::ZSpace>(cfg::build_zcon(spec));
      return audit::audit_lipschitz(audit::f_project_map(sp), audit::make_oracle(*sp),
                                    audit::make_oracle(sp->bs), au.n ? au.n : 10000, seed,
                                    workers);
    }
    if (kind == "extremal")
      return audit::audit_lipschitz(audit::e_value_map(), audit::make_extremal_oracle(),
                                    audit::make_oracle(base::unit_interval()),
                                    au.n ? au.n : 10000, seed, workers);
    return audit::audit_lipschitz(audit::identity_map(), oracle(), oracle(),
                                  au.n ? au.n : 10000, seed, workers);
  }
  if (au.audit == "chain") {
    auto eps_chain = rat_parse(au.chain_eps);
    if (!eps_chain) throw parse_error("bad --chain-eps value: " + au.chain_eps);
    if (kind == "zcon") {
      const auto space = cfg::build_zcon(spec);
      std::vector<audit::PointHandle> pts;
      for (const auto& p : zcon::skeleton_sample(space, au.grid, *eps_chain)) pts.emplace_back(p);
      return audit::audit_chain(audit::make_oracle(space), pts, *eps_chain, workers);
    }
    auto o = oracle();
    Rng rng(seed);
    std::vector<audit::PointHandle> pts;
    const std::uint64_t n = au.n ? au.n : 64;
    for (std::uint64_t i = 0; i < n; ++i) pts.push_back(o.sample(rng));
    return audit::audit_chain(o, pts, *eps_chain, workers);
  }
  if (au.audit == "cauchy") {
    if (kind == "hedgehog") {
      const auto space = cfg::build_hedgehog(spec);
      return audit::audit_cauchy(audit::make_oracle(space), {audit::hedgehog_spike_probe(space)},
                                 au.depth);
    }
    if (kind == "cobweb") {
      const auto space = cfg::build_cobweb(spec);
      return audit::audit_cauchy(audit::make_oracle(space), {audit::cobweb_thread_probe(space)},
                                 au.depth);
    }
    if (kind == "zcon") {
      auto sp = std::make_shared<const zcon::ZSpace>(cfg::build_zcon(spec));
      return audit::audit_cauchy(audit::make_oracle(*sp), {audit::zcon_spike_probe(sp)},
                                 au.depth);
    }
    throw parse_error("cauchy probes exist for hedgehog, cobweb and zcon spaces");
  }
  if (au.audit == "ball-image") {
    if (kind == "zcon")
      return audit::audit_ball_image_zcon(cfg::build_zcon(spec), au.n ? au.n : 100, seed, workers);
    if (kind == "extremal")
      return audit::audit_ball_image_extremal(au.n ? au.n : 100, seed, workers);
    throw parse_error("ball-image audits exist for zcon and extremal spaces");
  }
  throw parse_error("unknown audit '" + au.audit +
                    "' (metric, ultrametric, distinct, lipschitz, chain, cauchy, ball-image)");
}

std::map<std::string, std::string> audit_config(const exm::cfg::SpaceSpec& spec,
                                                const AuditArgs& au, std::uint64_t seed) {
  std::map<std::string, std::string> cfg;
  for (const auto& [k, v] : spec.resolved()) cfg["space." + k] = v;
  cfg["audit"] = au.audit;
  cfg["seed"] = std::to_string(seed);
  if (au.n) cfg["n"] = std::to_string(au.n);
  if (au.audit == "cauchy") cfg["depth"] = std::to_string(au.depth);
  if (au.audit == "chain") {
    cfg["chain_eps"] = au.chain_eps;
    cfg["grid"] = std::to_string(au.grid);
  }
  return cfg;
}

int run_audit(CommonArgs& args, AuditArgs& au) {
  exm::cfg::SpaceSpec spec;
  if (!au.from_report.empty()) {
    std::ifstream in(au.from_report);
    if (!in) throw exm::parse_error("cannot read report " + au.from_report);
    Json doc = Json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.contains("config"))
      throw exm::parse_error("no embedded config in " + au.from_report);
    std::map<std::string, std::string> space_kv;
    for (const auto& [k, v] : doc["config"].items()) {
      if (k.rfind("space.", 0) == 0)
        space_kv[k.substr(6)] = v.get<std::string>();
      else if (k == "audit")
        au.audit = v.get<std::string>();
      else if (k == "seed")
        args.seed = std::stoull(v.get<std::string>());
      else if (k == "n")
        au.n = std::stoull(v.get<std::string>());
      else if (k == "depth")
        au.depth = static_cast<unsigned>(std::stoul(v.get<std::string>()));
      else if (k == "chain_eps")
        au.chain_eps = v.get<std::string>();
      else if (k == "grid")
        au.grid = static_cast<std::uint32_t>(std::stoul(v.get<std::string>()));
    }
    spec = exm::cfg::spec_from_map(space_kv);
  } else {
    spec = resolve_space(args);
  }
  if (au.audit.empty()) throw exm::parse_error("give --audit <name>");

  const auto report = dispatch_audit(spec, au, args.seed, args.workers);
  const Json doc = exm::report::report_document(report, audit_config(spec, au, args.seed));
  const std::string out_path = args.out_path.empty() ? "report.json" : args.out_path;
  exm::report::write_atomic(out_path, doc.dump(2) + "\n");
  std::cout << report.audit << " on " << report.space << ": " << report.passed << "/"
            << report.attempted << " checks, " << report.violations.size() << " violation(s) -> "
            << out_path << "\n";
  return report.ok() ? kExitOk : kExitViolations;
}

// ---- suite ------------------------------------------------------------

int run_suite_cmd(const CommonArgs& args, bool list, const std::vector<std::string>& only,
                  bool inject_corruption) {
  if (list) {
    for (const auto& id : exm::suite::criterion_ids()) std::cout << id << "\n";
    return kExitOk;
  }
  exm::suite::SuiteOptions opt;
  opt.seed = args.seed;
  opt.workers = args.workers;
  opt.inject_corruption = inject_corruption;
  opt.only = only;
  const auto results = exm::suite::run_suite(opt);

  Json doc;
  doc["seed"] = args.seed;
  doc["criteria"] = Json::array();
  for (const auto& r : results) {
    std::printf("[%s] %s — %s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                r.description.c_str(), r.seconds, r.detail.c_str());
    Json jr;
    jr["id"] = r.id;
    jr["description"] = r.description;
    jr["pass"] = r.pass;
    jr["detail"] = r.detail;
    jr["seconds"] = r.seconds;
    doc["criteria"].push_back(std::move(jr));
  }
  const bool ok = exm::suite::all_passed(results);
  doc["ok"] = ok;
  std::printf("%zu/%zu criteria passed\n",
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const auto& r) { return r.pass; })),
              results.size());
  if (!args.out_path.empty()) exm::report::write_atomic(args.out_path, doc.dump(2) + "\n");
  return ok ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact constructions and seeded property audits for a family of exotic path-metric spaces"};
  app.require_subcommand(1);

  CommonArgs dist_args;
  std::string lit1, lit2;
  bool witness = false, truncated = false;
  auto* dist = app.add_subcommand("dist", "exact distance between two points");
  add_common(dist, dist_args);
  dist->add_option("point1", lit1, "first point literal")->required();
  dist->add_option("point2", lit2, "second point literal")->required();
  dist->add_flag("--witness", witness, "print the witness path (cobweb)");
  dist->add_flag("--truncated", truncated, "truncate the distance at 1 (zcon)");

  CommonArgs audit_args;
  AuditArgs au;
  auto* aud = app.add_subcommand("audit", "run one seeded property audit, write a JSON report");
  add_common(aud, audit_args);
  aud->add_option("--audit", au.audit,
                  "metric | ultrametric | distinct | lipschitz | chain | cauchy | ball-image");
  aud->add_option("--n", au.n, "sample size (audit-specific default)");
  aud->add_option("--depth", au.depth, "cauchy probe depth")->default_val(20);
  aud->add_option("--chain-eps", au.chain_eps, "chain audit threshold")->default_val("1/8");
  aud->add_option("--grid", au.grid, "skeleton fiber grid denominator")->default_val(64);
  aud->add_option("--from-report", au.from_report, "re-run the config embedded in a report");

  CommonArgs suite_args;
  bool list = false, inject = false;
  std::vector<std::string> only;
  auto* suite_cmd = app.add_subcommand("suite", "run the full acceptance battery");
  add_common(suite_cmd, suite_args, /*with_space=*/false);
  suite_cmd->add_flag("--list", list, "print criterion identifiers and exit");
  suite_cmd->add_option("--only", only, "run only these criterion ids");
  suite_cmd->add_flag("--inject-corruption", inject,
                      "corrupt one audited table; the run must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }

  try {
    if (dist->parsed()) return run_dist(dist_args, lit1, lit2, witness, truncated);
    if (aud->parsed()) return run_audit(audit_args, au);
    return run_suite_cmd(suite_args, list, only, inject);
  } catch (const exm::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const exm::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

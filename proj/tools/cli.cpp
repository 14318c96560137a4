#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "liequot/detector.hpp"
#include "liequot/errors.hpp"
#include "liequot/unitary.hpp"

namespace liequot::cli {

ResultCache::ResultCache(std::filesystem::path path, std::ostream* warn)
    : path_(std::move(path)), warn_(warn) {}

std::optional<phi::PhiRecord> ResultCache::lookup(const std::string& hash, const lie::LieClass& c,
                                                  std::uint64_t q, bool require_exact) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::optional<phi::PhiRecord> found;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      phi::PhiRecord r = phi::record_from_json(j);
      if (r.hash == hash && r.cls.xtype == c.xtype && r.cls.d == c.d && r.q == q) {
        found = std::move(r);
      }
    } catch (const std::exception& ex) {
      if (warn_) *warn_ << "warning: skipping cache line " << lineno << ": " << ex.what() << "\n";
    }
  }
  if (found && require_exact && !found->exact) return std::nullopt;
  return found;
}

void ResultCache::store(const phi::PhiRecord& r) const {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw InputError("cannot write cache file " + path_.string());
  out << phi::to_json(r).dump() << "\n";
}

std::optional<std::filesystem::path> cache_path(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv(kCacheEnv); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

namespace {

struct RunConfig {
  std::string presentation;
  std::string cls = "A1";
  int d = 0;  // 0: taken from the class name
  std::vector<std::uint64_t> qs;
  std::uint64_t p = 0;
  int e_max = 0;
  std::size_t cap = matgrp::MatGroup::kDefaultCap;
  std::uint64_t budget = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  std::string cache;
  std::string format;
};

lie::LieClass resolve_class(const RunConfig& cfg) {
  std::string name = cfg.cls;
  int d = 1;
  if (name.size() > 1 && (name[0] == '2' || name[0] == '3')) {
    d = name[0] - '0';
    name = name.substr(1);
  }
  if (cfg.d != 0) d = cfg.d;
  return lie::LieClass::make(lie::parse_xtype(name), d);
}

// Records through the cache when one is configured.
class Records {
 public:
  Records(const fp::Presentation& p, const lie::LieClass& c, const RunConfig& cfg,
          std::ostream& err)
      : p_(p), c_(c), cfg_(cfg) {
    if (auto path = cache_path(cfg.cache)) cache_.emplace(*path, &err);
  }

  phi::PhiRecord operator()(std::uint64_t q) const {
    if (cache_) {
      if (auto r = cache_->lookup(p_.hash(), c_, q)) return *r;
    }
    phi::Target t(c_, q, cfg_.cap);
    phi::CountOptions opt;
    opt.budget = cfg_.budget;
    auto r = phi::compute_record(p_, t, opt);
    if (cache_) cache_->store(r);
    return r;
  }

 private:
  const fp::Presentation& p_;
  lie::LieClass c_;
  const RunConfig& cfg_;
  std::optional<ResultCache> cache_;
};

bool as_json(const RunConfig& cfg, bool default_json) {
  if (cfg.format.empty()) return default_json;
  return cfg.format == "json";
}

void add_class_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--class", cfg.cls, "Lie class: A1, A2 or 2A2")->capture_default_str();
  sub->add_option("--d", cfg.d, "twist degree (overrides a 2A2-style prefix)")
      ->check(CLI::Range(1, 3));
}

void add_budget_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--cap", cfg.cap, "largest group to enumerate")->capture_default_str();
  sub->add_option("--budget", cfg.budget, "search node budget, 0 for none")
      ->capture_default_str();
  sub->add_option("--cache", cfg.cache, std::string("results cache (default $") + kCacheEnv + ")");
}

void add_format(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
}

void print_disclaimer(std::ostream& out) { out << detector::kDisclaimer << "\n"; }

nlohmann::ordered_json inventory_json(const phi::PhiRecord& r) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["class"] = r.cls.name();
  j["exact"] = r.exact;
  auto imgs = nlohmann::ordered_json::array();
  for (const auto& ic : r.images) {
    imgs.push_back({{"image", ic.image.to_string()},
                    {"order", ic.image.order},
                    {"s_count", ic.s_count}});
  }
  j["images"] = std::move(imgs);
  return j;
}

int cmd_abel(const RunConfig& cfg, std::ostream& out) {
  const auto p = fp::read_presentation(cfg.presentation);
  const auto a = fp::abelianization(p);
  if (as_json(cfg, false)) {
    nlohmann::ordered_json j;
    j["presentation"] = fp::print(p);
    j["free_rank"] = a.free_rank;
    auto tors = nlohmann::ordered_json::array();
    for (const auto& t : a.torsion) tors.push_back(t.str());
    j["torsion"] = std::move(tors);
    j["trivial"] = a.trivial();
    out << j.dump() << "\n";
  } else {
    out << a.to_string() << (a.trivial() ? " (trivial)" : "") << "\n";
  }
  return 0;
}

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = fp::read_presentation(cfg.presentation);
  const auto c = resolve_class(cfg);
  Records records(p, c, cfg, err);
  for (auto q : cfg.qs) {
    const auto r = records(q);
    if (as_json(cfg, true)) {
      out << phi::to_json(r).dump() << "\n";
    } else {
      out << c.name() << " q=" << q << ": |Phi0| = " << r.n_phi0 << ", |Phi| = " << r.n_phi
          << ", orbits = " << r.orbit_count << "\n";
    }
  }
  return 0;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = fp::read_presentation(cfg.presentation);
  const auto c = resolve_class(cfg);
  Records records(p, c, cfg, err);
  for (auto q : cfg.qs) {
    nlohmann::ordered_json j;
    if (cfg.trials > 0) {
      phi::Target t(c, q, cfg.cap);
      const auto rs = phi::random_search(p, t, cfg.trials, cfg.seed);
      j["q"] = q;
      j["class"] = c.name();
      j["exact"] = false;
      j["trials"] = rs.trials;
      j["solutions"] = rs.solutions;
      auto imgs = nlohmann::ordered_json::array();
      for (const auto& d : rs.images) imgs.push_back({{"image", d.to_string()}, {"order", d.order}});
      j["images"] = std::move(imgs);
    } else {
      j = inventory_json(records(q));
    }
    if (as_json(cfg, true)) {
      out << j.dump() << "\n";
    } else {
      out << c.name() << " q=" << q << (j["exact"].get<bool>() ? "" : " (random search)") << ":";
      if (j["images"].empty()) out << " no same-type images";
      for (const auto& e : j["images"]) out << " " << e["image"].get<std::string>();
      out << "\n";
    }
  }
  return 0;
}

int cmd_growth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = fp::read_presentation(cfg.presentation);
  const auto c = resolve_class(cfg);
  Records records(p, c, cfg, err);
  const auto g = detector::growth_scan(c, cfg.qs, std::cref(records));
  if (as_json(cfg, true)) {
    out << detector::to_json(g).dump() << "\n";
  } else {
    out << "verdict: " << detector::to_string(g.verdict) << "\n";
    if (g.fit) out << "fitted exponent: " << g.fit->rho << " over " << g.fit->points << " points\n";
    for (const auto& [k, v] : g.evidence) out << k << ": " << v << "\n";
    print_disclaimer(out);
  }
  return 0;
}

int cmd_residue(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = fp::read_presentation(cfg.presentation);
  const auto c = resolve_class(cfg);
  Records records(p, c, cfg, err);
  const auto r = detector::residue_scan(cfg.p, cfg.e_max, std::cref(records));
  if (as_json(cfg, true)) {
    out << detector::to_json(r).dump() << "\n";
  } else {
    out << "p = " << r.p << ", bits:";
    for (bool b : r.bits) out << " " << (b ? 1 : 0);
    out << "\n";
    if (r.onset) {
      out << "period " << *r.period << " from e = " << *r.onset << "\n";
    } else {
      out << "no period with two full repeats in the window\n";
    }
    if (r.truncated) out << r.note << "\n";
    print_disclaimer(out);
  }
  return 0;
}

struct InclConfig {
  int d = 1;
  int e = 1;
  int f = 1;
  std::vector<std::uint64_t> overfield;
};

int cmd_incl(const InclConfig& ic, const RunConfig& cfg, std::ostream& out) {
  if (!ic.overfield.empty()) {
    const auto n = lie::common_overfield(ic.d, ic.overfield);
    if (as_json(cfg, false)) {
      out << nlohmann::ordered_json{{"d", ic.d}, {"exponents", ic.overfield}, {"common_overfield", n}}
                 .dump()
          << "\n";
    } else {
      out << n << "\n";
    }
    return 0;
  }
  if (ic.e < 1 || ic.f < 1) throw InputError("field degrees must be positive");
  const bool inc = lie::includes(ic.d, ic.e, ic.f);
  if (as_json(cfg, false)) {
    out << nlohmann::ordered_json{{"d", ic.d}, {"e", ic.e}, {"f", ic.f}, {"includes", inc}}.dump()
        << "\n";
  } else {
    out << (inc ? "true" : "false") << "\n";
  }
  return 0;
}

struct UnitaryConfig {
  std::uint64_t prime = 0;
  std::uint64_t scan = 0;
  std::uint64_t mu_q = 0;
  int m = 4;
};

int cmd_unitary(const UnitaryConfig& uc, const RunConfig& cfg, std::ostream& out) {
  const bool json = as_json(cfg, false);
  if (uc.prime) {
    const auto pc = unitary::classify_prime(uc.prime);
    if (json) {
      out << nlohmann::ordered_json{{"p", pc.p},
                                    {"split_status", unitary::to_string(pc.split_status)},
                                    {"residue_size", pc.residue_size},
                                    {"class", unitary::to_string(pc.cls)}}
                 .dump()
          << "\n";
    } else {
      out << "p = " << pc.p << ": " << unitary::to_string(pc.split_status)
          << ", residue field size " << pc.residue_size << ", " << unitary::to_string(pc.cls)
          << "\n";
    }
  }
  if (uc.scan) {
    const auto found = unitary::p7_scan(uc.scan);
    if (json) {
      out << nlohmann::ordered_json{{"limit", uc.scan}, {"p7", found}}.dump() << "\n";
    } else {
      out << "P7 primes below " << uc.scan << ": " << found.size() << "\n";
    }
  }
  if (uc.mu_q) {
    const auto r = unitary::mu_obstruction(uc.mu_q, uc.m);
    if (json) {
      nlohmann::ordered_json j{{"q", r.q}, {"m", r.m}, {"conclusion", unitary::to_string(r.conclusion)}};
      j["witness"] = r.witness ? nlohmann::ordered_json(r.field->format(*r.witness))
                               : nlohmann::ordered_json(nullptr);
      out << j.dump() << "\n";
    } else {
      out << "q = " << r.q << ", m = " << r.m << ": " << unitary::to_string(r.conclusion);
      if (r.witness) out << " (mu = " << r.field->format(*r.witness) << ")";
      out << "\n";
    }
  }
  if (!uc.prime && !uc.scan && !uc.mu_q) throw InputError("unitary needs --prime, --p7-scan or --mu");
  return 0;
}

struct ReportConfig {
  std::vector<std::uint64_t> cross_qs{3};
};

int cmd_report(const ReportConfig& rc, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = fp::read_presentation(cfg.presentation);
  const auto c = resolve_class(cfg);
  Records records(p, c, cfg, err);
  nlohmann::ordered_json j;
  j["presentation"] = fp::print(p);
  j["hash"] = p.hash();
  j["abelianization"] = fp::abelianization(p).to_string();
  j["class"] = c.name();
  auto recs = nlohmann::ordered_json::array();
  std::vector<phi::PhiRecord> got;
  for (auto q : cfg.qs) {
    got.push_back(records(q));
    recs.push_back(phi::to_json(got.back()));
  }
  j["records"] = std::move(recs);
  std::map<std::uint64_t, phi::PhiRecord> by_q;
  for (auto& r : got) by_q.emplace(r.q, r);
  const auto g = detector::growth_scan(c, cfg.qs, [&](std::uint64_t q) { return by_q.at(q); });
  j["growth"] = detector::to_json(g);
  if (!rc.cross_qs.empty()) {
    const auto cr = detector::untwisted_crosscheck(p, rc.cross_qs, cfg.trials, cfg.seed, cfg.cap);
    j["crosscheck"] = detector::to_json(cr);
  }
  j["disclaimer"] = detector::kDisclaimer;
  if (as_json(cfg, true)) {
    out << j.dump(2) << "\n";
  } else {
    out << "presentation: " << j["presentation"].get<std::string>() << "\n";
    out << "abelianization: " << j["abelianization"].get<std::string>() << "\n";
    for (const auto& r : got) {
      out << c.name() << " q=" << r.q << ": |Phi| = " << r.n_phi << ", orbits = " << r.orbit_count
          << "\n";
    }
    out << "growth verdict: " << detector::to_string(g.verdict) << "\n";
    print_disclaimer(out);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Same-type quotients of finitely presented groups in small Lie-type groups",
               "liequot"};
  app.require_subcommand(1);

  RunConfig cfg;
  InclConfig ic;
  UnitaryConfig uc;
  ReportConfig rc;
  const std::vector<std::uint64_t> default_window{4, 5, 7, 8, 9, 11, 13};

  auto* abel = app.add_subcommand("abel", "abelianization of a presentation");
  abel->add_option("presentation", cfg.presentation, "inline <...> text or .fp file")->required();
  add_format(abel, cfg);

  auto* count = app.add_subcommand("count", "exact solution-set record for each q");
  auto* classify = app.add_subcommand("classify", "same-type image inventory for each q");
  auto* growth = app.add_subcommand("growth", "growth verdict over a q window");
  for (auto* sub : {count, classify, growth}) {
    sub->add_option("presentation", cfg.presentation, "inline <...> text or .fp file")->required();
    add_class_options(sub, cfg);
    auto* qopt = sub->add_option("--q", cfg.qs, "field sizes, repeated or comma separated")
                     ->delimiter(',')
                     ->allow_extra_args(false);
    if (sub == growth) {
      qopt->default_str("4,5,7,8,9,11,13");
    } else {
      qopt->required();
    }
    add_budget_options(sub, cfg);
    add_format(sub, cfg);
  }
  classify->add_option("--trials", cfg.trials, "random search trials instead of exhaustive count");
  classify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();

  auto* residue = app.add_subcommand("residue", "periodicity of nonemptiness over q = p^e");
  residue->add_option("presentation", cfg.presentation, "inline <...> text or .fp file")->required();
  add_class_options(residue, cfg);
  residue->add_option("--p", cfg.p, "characteristic")->required();
  residue->add_option("--e-max", cfg.e_max, "largest exponent")->required();
  add_budget_options(residue, cfg);
  add_format(residue, cfg);

  auto* incl = app.add_subcommand("incl", "twisted subfield inclusion queries");
  incl->add_option("--d", ic.d, "twist degree")->check(CLI::Range(1, 3))->capture_default_str();
  incl->add_option("--e", ic.e, "subfield degree");
  incl->add_option("--f", ic.f, "field degree");
  incl->add_option("--overfield", ic.overfield, "exponents for the least common overfield")
      ->delimiter(',')
      ->allow_extra_args(false);
  add_format(incl, cfg);

  auto* uni = app.add_subcommand("unitary", "prime splitting and scalar obstruction scans");
  uni->add_option("--prime", uc.prime, "classify one prime");
  uni->add_option("--p7-scan", uc.scan, "list P7 primes below this limit");
  uni->add_option("--mu", uc.mu_q, "search mu over F_{q^2} for this q");
  uni->add_option("--m", uc.m, "matrix size for --mu")->capture_default_str();
  add_format(uni, cfg);

  auto* report = app.add_subcommand("report", "abelianization, records, growth and cross-check");
  report->add_option("presentation", cfg.presentation, "inline <...> text or .fp file")->required();
  add_class_options(report, cfg);
  report->add_option("--q", cfg.qs, "field sizes")
      ->delimiter(',')
      ->allow_extra_args(false)
      ->default_str("4,5,7,8,9,11,13");
  report->add_option("--cross-q", rc.cross_qs, "field sizes for the A2 cross-check")
      ->delimiter(',')
      ->allow_extra_args(false)
      ->default_str("3");
  report->add_option("--trials", cfg.trials, "random trials per cross-check run");
  report->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  add_budget_options(report, cfg);
  add_format(report, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::input_error);
  }

  try {
    if (cfg.qs.empty() && (growth->parsed() || report->parsed())) cfg.qs = default_window;
    if (report->parsed() && cfg.trials == 0) cfg.trials = 500;
    if (cfg.cap == 0) throw InputError("--cap must be positive");
    if (*abel) return cmd_abel(cfg, out);
    if (*count) return cmd_count(cfg, out, err);
    if (*classify) return cmd_classify(cfg, out, err);
    if (*growth) return cmd_growth(cfg, out, err);
    if (*residue) return cmd_residue(cfg, out, err);
    if (*incl) return cmd_incl(ic, cfg, out);
    if (*uni) return cmd_unitary(uc, cfg, out);
    if (*report) return cmd_report(rc, cfg, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::input_error);
  } catch (const BudgetError& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return static_cast<int>(ExitCode::budget_error);
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return static_cast<int>(ExitCode::internal_error);
  }
  return static_cast<int>(ExitCode::input_error);
}

}  // namespace liequot::cli

#pragma once

// Suite selection, table construction with caching, and JSON reports.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2fk/automorphism.hpp"
#include "g2fk/cache.hpp"
#include "g2fk/check.hpp"
#include "g2fk/chevalley_checks.hpp"
#include "g2fk/p3_suite.hpp"
#include "g2fk/parallel.hpp"
#include "g2fk/structure.hpp"

namespace g2fk {

inline constexpr const char* kToolkitVersion = "1.0.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  unsigned p = 7;
  std::string model = "auto";  // poly | chevalley | both | auto
  std::string suite = "all";   // structure | aut | chevalley | p3 | all
  unsigned jobs = 1;
  std::string cache_dir;
  std::string out;
  std::uint64_t seed = 1;
  bool timings = false;
};

/// The model actually used; "auto" picks both models for p >= 5.
inline std::string resolve_model(const RunConfig& c) {
  if (!is_prime(c.p) || c.p < 3 || c.p > 11) throw UsageError("p must be a prime between 3 and 11");
  const std::string m = c.model == "auto" ? (c.p == 3 ? "chevalley" : "both") : c.model;
  if (m != "poly" && m != "chevalley" && m != "both") throw UsageError("unknown model '" + c.model + "'");
  if (c.p == 3 && m != "chevalley") throw UsageError("model requires p >= 5");
  return m;
}

inline std::vector<std::string> resolve_suites(const RunConfig& c, const std::string& model) {
  const bool poly = model != "chevalley";
  const bool chev = model != "poly";
  if (c.suite == "all") {
    std::vector<std::string> out;
    if (poly) out.insert(out.end(), {"structure", "aut"});
    if (chev) out.push_back("chevalley");
    if (c.p == 3) out.push_back("p3");
    return out;
  }
  if (c.suite == "structure" || c.suite == "aut") {
    if (!poly) throw UsageError("suite " + c.suite + " requires the poly model");
  } else if (c.suite == "chevalley") {
    if (!chev) throw UsageError("suite chevalley requires the chevalley model");
  } else if (c.suite == "p3") {
    if (c.p != 3) throw UsageError("suite p3 requires p = 3");
  } else {
    throw UsageError("unknown suite '" + c.suite + "'");
  }
  return {c.suite};
}

inline std::string default_cache_dir() {
  const char* env = std::getenv("G2FK_CACHE_DIR");
  return env ? env : "";
}

/// Tables for one run, loaded from or written to the cache directory.
struct Tables {
  std::optional<PolyTable> poly;
  std::optional<ChevalleyTable> chevalley;
  std::size_t cache_hits = 0;
};

inline PolyTable obtain_poly(unsigned p, const std::string& cache_dir, std::uint64_t seed, std::size_t& hits) {
  if (cache_dir.empty()) return PolyTable(p);
  const auto path = std::filesystem::path(cache_dir) / cache_file_name(p, ModelTag::Poly);
  if (std::filesystem::exists(path)) {
    PolyTable t = load_poly_cache(path, p, seed);
    ++hits;
    return t;
  }
  PolyTable t(p);
  save_cache(path, t);
  return t;
}

inline ChevalleyTable obtain_chevalley(unsigned p, const std::string& cache_dir, std::uint64_t seed, std::size_t& hits) {
  if (cache_dir.empty()) return generate_u(p);
  const auto path = std::filesystem::path(cache_dir) / cache_file_name(p, ModelTag::Chevalley);
  if (std::filesystem::exists(path)) {
    ChevalleyTable t = load_chevalley_cache(path, p, seed);
    ++hits;
    return t;
  }
  ChevalleyTable t = generate_u(p);
  save_cache(path, t);
  return t;
}

inline Tables build_tables(unsigned p, const std::string& model, const std::string& cache_dir, std::uint64_t seed) {
  Tables t;
  if (model != "chevalley") t.poly.emplace(obtain_poly(p, cache_dir, seed, t.cache_hits));
  if (model != "poly") t.chevalley.emplace(obtain_chevalley(p, cache_dir, seed, t.cache_hits));
  return t;
}

inline std::size_t power6(unsigned p) {
  std::size_t n = 1;
  for (int i = 0; i < 6; ++i) n *= p;
  return n;
}

inline std::vector<CheckResult> structure_suite(const SContext& c) {
  std::vector<CheckResult> out;
  auto add = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };
  add(timed([&] {
    return std::vector<CheckResult>{make_check("structure.carrier", c.t.size() == power6(c.p()),
                                               "|S| = " + std::to_string(power6(c.p())),
                                               "|S| = " + std::to_string(c.t.size()), "size mismatch")};
  }));
  add(timed([&] { return verify_charz(c, all_diag_auts(c.t)); }));
  add(timed([&] { return verify_series_and_exponent(c); }));
  const auto maxes = maximal_subgroups(c.t, c.S);
  add(timed([&] { return verify_z4char(c, maxes); }));
  add(timed([&] { return std::vector<CheckResult>{scan_maximals_check(c, maxes)}; }));
  add(timed([&] { return w_family_checks(c); }));
  add(timed([&] { return u_family_checks(c, maxes); }));
  add(timed([&] { return std::vector<CheckResult>{subset_census_check()}; }));
  add(timed([&] { return std::vector<CheckResult>{q_lagrangian_check(c)}; }));
  return out;
}

inline constexpr std::size_t kRandomSimilitudes = 200;
inline constexpr std::size_t kPairAuditSamples = 10000;

inline std::vector<CheckResult> aut_suite(const SContext& c, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto add = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };
  const auto diags = all_diag_auts(c.t);
  std::vector<Automorphism> pool = diags;
  for (Id s : c.t.generators()) pool.push_back(inner_aut(c.t, s));
  add(timed([&] { return std::vector<CheckResult>{diag_certified_check(c, diags)}; }));
  add(timed([&] { return std::vector<CheckResult>{center_criterion_scan(c)}; }));
  add(timed([&] { return std::vector<CheckResult>{scalar_action_check(c, diags)}; }));
  add(timed([&] { return gram_checks(c); }));
  add(timed([&] { return std::vector<CheckResult>{similitude_check(c, diags, kRandomSimilitudes, seed, &pool)}; }));
  add(timed([&] { return generating_pair_checks(c, kPairAuditSamples, seed + 1); }));
  add(timed([&] { return std::vector<CheckResult>{inn_r_structure(c)}; }));
  add(timed([&] {
    return std::vector<CheckResult>{ca_lemma_instance(c, diags, c.Z4, "Z4"), ca_lemma_instance(c, diags, c.Q, "Q"),
                                    ca_lemma_instance(c, diags, c.R, "R")};
  }));
  add(timed([&] { return std::vector<CheckResult>{frattini_action_image(c, diags)}; }));
  add(timed([&] { return std::vector<CheckResult>{recertification_audit(c.t, pool, seed + 2)}; }));
  return out;
}

inline std::vector<CheckResult> chevalley_suite(const ChevalleyTable& u, const PolyTable* poly) {
  std::vector<CheckResult> out;
  auto add = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };
  const unsigned p = u.prime();
  add(timed([&] {
    const bool ok = u.size() == power6(p) && u.closure_size() == power6(p);
    return std::vector<CheckResult>{make_check("chevalley.carrier", ok, "|U| = " + std::to_string(power6(p)),
                                               "|U| = " + std::to_string(u.size()) + ", closure " +
                                                   std::to_string(u.closure_size()),
                                               "size mismatch")};
  }));
  const ChevalleyModel& m = u.model();
  add(timed([&] {
    const CommutatorSurvey survey = commutator_survey(m);
    return std::vector<CheckResult>{trivial_pairs_check(survey), polynomial_fit_check(survey)};
  }));
  add(timed([&] { return std::vector<CheckResult>{convention_check(m)}; }));
  add(timed([&] { return relation_checks(m); }));
  if (poly) add(timed([&] { return iso_check(u, *poly); }));
  else
    out.push_back(make_skip("chevalley.iso", p == 3 ? "no polynomial model at p = 3" : "requires --model both"));
  return out;
}

inline std::vector<CheckResult> p3_suite(const ChevalleyTable& u) {
  return timed([&] { return p3_fact_suite(P3Context(u)); });
}

struct Report {
  unsigned p = 0;
  std::string model;
  std::string suite;
  std::uint64_t seed = 0;
  bool timings = false;
  std::vector<CheckResult> checks;
  std::size_t cache_hits = 0;
  long long total_millis = 0;

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const CheckResult& r) { return r.status == s; }));
  }
  int exit_code() const { return count(Status::Fail) ? 1 : 0; }
};

/// Runs the selected suites. Throws UsageError on invalid configurations.
inline Report run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::string model = resolve_model(cfg);
  const auto suites = resolve_suites(cfg, model);
  set_jobs(cfg.jobs);
  Report rep;
  rep.p = cfg.p;
  rep.model = model;
  rep.suite = cfg.suite;
  rep.seed = cfg.seed;
  rep.timings = cfg.timings;
  const bool need_poly = std::any_of(suites.begin(), suites.end(), [](auto& s) { return s == "structure" || s == "aut"; }) ||
                         (model == "both" && std::count(suites.begin(), suites.end(), "chevalley"));
  const bool need_chev = std::any_of(suites.begin(), suites.end(), [](auto& s) { return s == "chevalley" || s == "p3"; });
  const Tables tables = build_tables(cfg.p, need_poly ? (need_chev ? "both" : "poly") : "chevalley", cfg.cache_dir, cfg.seed);
  rep.cache_hits = tables.cache_hits;
  std::optional<SContext> ctx;
  if (tables.poly) ctx.emplace(*tables.poly);
  for (const auto& s : suites) {
    std::vector<CheckResult> part;
    if (s == "structure") part = structure_suite(*ctx);
    else if (s == "aut") part = aut_suite(*ctx, cfg.seed);
    else if (s == "chevalley") part = chevalley_suite(*tables.chevalley, tables.poly ? &*tables.poly : nullptr);
    else if (s == "p3") part = p3_suite(*tables.chevalley);
    for (auto& r : part) rep.checks.push_back(std::move(r));
  }
  std::stable_sort(rep.checks.begin(), rep.checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  rep.total_millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Key order is fixed; timing fields are null unless timings were requested.
inline nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["model"] = r.model;
  j["suite"] = r.suite;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["status"] = status_name(c.status);
    e["expected"] = c.expected;
    e["actual"] = c.actual;
    e["witness"] = c.witness ? nlohmann::ordered_json(*c.witness) : nlohmann::ordered_json(nullptr);
    e["millis"] = r.timings && c.millis ? nlohmann::ordered_json(*c.millis) : nlohmann::ordered_json(nullptr);
    j["checks"].push_back(std::move(e));
  }
  nlohmann::ordered_json s;
  s["total"] = r.checks.size();
  s["pass"] = r.count(Status::Pass);
  s["fail"] = r.count(Status::Fail);
  s["skip"] = r.count(Status::Skip);
  s["finding"] = r.count(Status::Finding);
  s["seed"] = r.seed;
  s["version"] = kToolkitVersion;
  if (r.timings) {
    s["total_millis"] = r.total_millis;
    s["cache_hits"] = r.cache_hits;
  }
  j["summary"] = std::move(s);
  return j;
}

inline std::string report_text(const Report& r) { return report_json(r).dump(2) + "\n"; }

}  // namespace g2fk

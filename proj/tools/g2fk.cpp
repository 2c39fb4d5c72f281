// g2fk: build, verify and report on the Sylow p-subgroup of G2(p).

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "g2fk/runner.hpp"

using namespace g2fk;

namespace {

constexpr int kExitUsage = 2;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

int cmd_verify(const RunConfig& cfg) {
  const Report rep = run(cfg);
  write_output(report_text(rep), cfg.out);
  std::cerr << "p=" << rep.p << " model=" << rep.model << " suite=" << rep.suite << ": " << rep.checks.size()
            << " checks, " << rep.count(Status::Pass) << " pass, " << rep.count(Status::Fail) << " fail, "
            << rep.count(Status::Skip) << " skip, " << rep.count(Status::Finding) << " finding\n";
  return rep.exit_code();
}

int cmd_iso(RunConfig cfg) {
  cfg.model = "both";
  const std::string model = resolve_model(cfg);
  set_jobs(cfg.jobs);
  const Tables t = build_tables(cfg.p, model, cfg.cache_dir, cfg.seed);
  Report rep;
  rep.p = cfg.p;
  rep.model = model;
  rep.suite = "iso";
  rep.seed = cfg.seed;
  rep.timings = cfg.timings;
  rep.cache_hits = t.cache_hits;
  rep.checks = timed([&] { return iso_check(*t.chevalley, *t.poly); });
  write_output(report_text(rep), cfg.out);
  return rep.exit_code();
}

int cmd_build(const RunConfig& cfg) {
  const std::string model = resolve_model(cfg);
  set_jobs(cfg.jobs);
  if (cfg.cache_dir.empty()) throw UsageError("build needs --cache-dir or G2FK_CACHE_DIR");
  const auto start = std::chrono::steady_clock::now();
  const Tables t = build_tables(cfg.p, model, cfg.cache_dir, cfg.seed);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::string text;
  if (t.poly)
    text += "poly p=" + std::to_string(cfg.p) + " elements=" + std::to_string(t.poly->size()) + " cache=" +
            (std::filesystem::path(cfg.cache_dir) / cache_file_name(cfg.p, ModelTag::Poly)).string() + "\n";
  if (t.chevalley)
    text += "chevalley p=" + std::to_string(cfg.p) + " elements=" + std::to_string(t.chevalley->size()) + " cache=" +
            (std::filesystem::path(cfg.cache_dir) / cache_file_name(cfg.p, ModelTag::Chevalley)).string() + "\n";
  text += "cache_hits=" + std::to_string(t.cache_hits);
  if (cfg.timings) text += " millis=" + std::to_string(ms);
  write_output(text + "\n", cfg.out);
  return 0;
}

int cmd_census(const RunConfig& cfg, bool subsets) {
  std::string text;
  if (subsets) {
    const auto orbits = subset_orbit_census();
    text += "orbits of F_7^x on nonempty subsets of {1,...,6}: " + std::to_string(orbits.size()) + "\n";
    text += "representative        length\n";
    std::size_t total = 0;
    for (const auto& [mask, expected] : named_subset_representatives()) {
      const unsigned key = orbit_min(mask);
      const auto it = std::find_if(orbits.begin(), orbits.end(), [&](const SubsetOrbit& o) { return o.rep == key; });
      std::string rep = subset_text(mask);
      rep.resize(std::max<std::size_t>(rep.size(), 22), ' ');
      const std::size_t len = it == orbits.end() ? 0 : it->length;
      text += rep + std::to_string(len) + "\n";
      total += len;
    }
    text += "total                 " + std::to_string(total) + "\n";
  } else {
    RunConfig c = cfg;
    if (c.model == "both") throw UsageError("census takes a single model");
    const std::string model = resolve_model(c) == "both" ? "poly" : resolve_model(c);
    set_jobs(cfg.jobs);
    const Tables t = build_tables(cfg.p, model, cfg.cache_dir, cfg.seed);
    const auto census = t.poly ? order_census(*t.poly, whole_group(*t.poly))
                               : order_census(*t.chevalley, whole_group(*t.chevalley));
    text += "element orders of the " + model + " model at p=" + std::to_string(cfg.p) + "\n";
    text += "order  count\n";
    for (const auto& [o, n] : census) {
      std::string left = std::to_string(o);
      left.resize(7, ' ');
      text += left + std::to_string(n) + "\n";
    }
  }
  write_output(text, cfg.out);
  return 0;
}

int cmd_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open report " + path);
  const auto j = nlohmann::ordered_json::parse(in);
  std::size_t fails = 0;
  std::cout << "p=" << j.at("p") << " model=" << j.at("model").get<std::string>()
            << " suite=" << j.at("suite").get<std::string>() << "\n";
  for (const auto& c : j.at("checks")) {
    const std::string status = c.at("status").get<std::string>();
    fails += status == "fail";
    std::string line = status;
    line.resize(9, ' ');
    std::cout << line << c.at("id").get<std::string>() << ": " << c.at("actual").get<std::string>();
    if (!c.at("witness").is_null()) std::cout << " [witness: " << c.at("witness").get<std::string>() << "]";
    std::cout << "\n";
  }
  const auto& s = j.at("summary");
  std::cout << "summary: " << s.at("pass") << " pass, " << s.at("fail") << " fail, " << s.at("skip") << " skip, "
            << s.at("finding") << " finding\n";
  return fails ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for the Sylow p-subgroup of G2(p)"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.cache_dir = default_cache_dir();
  bool subsets = false;
  std::string report_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Prime (3, 5, 7, 11)");
    sub->add_option("--model", cfg.model, "poly | chevalley | both (default: both, chevalley at p = 3)");
    sub->add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");
    sub->add_option("--cache-dir", cfg.cache_dir, "Table cache directory (default: $G2FK_CACHE_DIR)");
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
    sub->add_flag("--timings", cfg.timings, "Include wall-clock timings in the output");
  };
  auto* build = app.add_subcommand("build", "Build group tables and write them to the cache");
  common(build);
  auto* verify = app.add_subcommand("verify", "Run verification suites and write a JSON report");
  common(verify);
  verify->add_option("--suite", cfg.suite, "structure | aut | chevalley | p3 | all");
  auto* census = app.add_subcommand("census", "Element-order census or the subset orbit table");
  common(census);
  census->add_flag("--subsets", subsets, "Orbits of F_7^x on nonempty subsets of {1,...,6}");
  auto* iso = app.add_subcommand("iso", "Cross-model isomorphism check");
  common(iso);
  auto* report = app.add_subcommand("report", "Summarize a saved JSON report");
  report->add_option("file", report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*build) return cmd_build(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*census) return cmd_census(cfg, subsets);
    if (*iso) return cmd_iso(cfg);
    if (*report) return cmd_report(report_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

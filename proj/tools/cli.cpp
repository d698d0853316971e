#include "cli.hpp"

#include "qop/demo.hpp"
#include "qop/error.hpp"
#include "qop/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace qop::cli {

namespace {

struct Options {
  std::size_t dim = 2;
  std::size_t outcomes = 2;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::string report;
  std::vector<std::string> ids;
};

constexpr std::size_t kSearchBudget = 1000;
constexpr double kSearchThreshold = 1e-6;

std::string row(const CheckReport& r, const char* status) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-20s %8zu  %13.3e  %s", r.check_id.c_str(), r.trials, r.max_deviation, status);
  std::string line = buf;
  if (!r.reason.empty()) line += "  (" + r.reason + ")";
  return line;
}

bool write_json(const std::string& path, const Json& doc, std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "cannot write " << path << "\n";
    return false;
  }
  f << doc.dump(2) << "\n";
  return static_cast<bool>(f);
}

std::string witness_path(const std::string& report, const std::string& id) {
  const std::filesystem::path p(report);
  return (p.parent_path() / (p.stem().string() + ".witness." + id + ".json")).string();
}

int cmd_check(const Options& o, bool dim_set, bool outcomes_set, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ids = o.ids;
  if (ids.empty())
    for (const auto& e : list_checks()) ids.push_back(e.id);
  for (const auto& id : ids) {
    if (!is_check(id)) {
      err << "unknown check id: " << id << "\n";
      return kConfigError;
    }
  }
  SweepConfig sweep;
  if (dim_set) sweep.dims = {o.dim};
  if (outcomes_set) sweep.outcome_counts = {o.outcomes};
  GeneratorConfig base;
  base.seed = o.seed;
  base.trials = o.trials;
  for (std::size_t d : sweep.dims)
    for (std::size_t m : sweep.outcome_counts) {
      GeneratorConfig cfg = base;
      cfg.dim = d;
      cfg.outcome_count = m;
      cfg.validate();
    }
  if (!(o.tol > 0.0)) throw Error(ErrorCode::BadSizes, "--tol must be positive");

  Json doc = Json::array();
  bool all = true;
  out << "check_id               trials  max_deviation  status\n";
  for (const auto& id : ids) {
    const CheckReport r = run_check_sweep(id, base, sweep, o.tol);
    all = all && r.passed;
    doc.push_back(to_json(r));
    out << row(r, r.passed ? "PASS" : "FAIL") << "\n";
  }
  if (!write_json(o.report, doc, err)) return kConfigError;
  out << (all ? "all checks passed" : "some checks failed") << "; report: " << o.report << "\n";
  return all ? kOk : kFailure;
}

int cmd_search(const Options& o, bool trials_set, bool tol_set, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ids = o.ids;
  if (ids.empty())
    for (const auto& e : list_searches()) ids.push_back(e.id);
  for (const auto& id : ids) {
    if (!is_search(id) && !is_check(id)) {
      err << "unknown search id: " << id << "\n";
      return kConfigError;
    }
  }
  GeneratorConfig cfg;
  cfg.seed = o.seed;
  cfg.dim = o.dim;
  cfg.outcome_count = o.outcomes;
  cfg.trials = trials_set ? o.trials : kSearchBudget;
  cfg.validate();
  const double threshold = tol_set ? o.tol : kSearchThreshold;

  Json doc = Json::array();
  bool all = true;
  out << "search_id              trials  max_deviation  status\n";
  for (const auto& id : ids) {
    const CheckReport r = run_search(id, cfg, threshold);
    const bool informational = is_conjecture(id);
    if (!informational) all = all && r.passed;
    doc.push_back(to_json(r));
    const char* status = informational ? "INFO" : (r.passed ? "FOUND" : "NONE");
    out << row(r, status) << "\n";
    if (r.witness && r.passed) {
      const std::string path = witness_path(o.report, id);
      if (!write_json(path, *r.witness, err)) return kConfigError;
    }
  }
  if (!write_json(o.report, doc, err)) return kConfigError;
  out << (all ? "every search found a witness" : "some searches exhausted their budget")
      << "; report: " << o.report << "\n";
  return all ? kOk : kFailure;
}

int cmd_demo(const Options& o, std::ostream& out) {
  const DemoResult r = run_demo(o.seed);
  out << r.text;
  out << "\n" << (r.all_passed() ? "all example identities verified" : "some example identities failed") << "\n";
  return r.all_passed() ? kOk : kFailure;
}

int cmd_list(std::ostream& out) {
  out << "checks:\n";
  for (const auto& e : list_checks()) out << "  " << e.id << "  " << e.summary << "\n";
  out << "searches:\n";
  for (const auto& e : list_searches()) {
    out << "  " << e.id << "  " << e.summary << (is_conjecture(e.id) ? "  [informational]" : "") << "\n";
  }
  return kOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--dim", o.dim, "Hilbert space dimension")->check(CLI::PositiveNumber);
  sub->add_option("--outcomes", o.outcomes, "outcome count")->check(CLI::PositiveNumber);
  sub->add_option("--trials", o.trials, "trials per configuration");
  sub->add_option("--seed", o.seed, "base seed");
  sub->add_option("--tol", o.tol, "pass threshold");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinators for finite observables and instruments, with a randomized theorem harness"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "run the identity checks across dimensions");
  add_common(check, o);
  check->add_option("--report", o.report, "JSON report path")->default_val("check-report.json");
  check->add_option("--checks", o.ids, "restrict to these check ids")->delimiter(',');

  auto* search = app.add_subcommand("search", "look for witnesses of the non-identities");
  add_common(search, o);
  search->add_option("--report", o.report, "JSON report path")->default_val("search-report.json");
  search->add_option("--searches", o.ids, "restrict to these search ids")->delimiter(',');

  auto* demo = app.add_subcommand("demo", "print the worked examples");
  demo->add_option("--seed", o.seed, "seed for the example observables");

  app.add_subcommand("list", "list check and search ids");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    if (*check) return cmd_check(o, check->count("--dim") > 0, check->count("--outcomes") > 0, out, err);
    if (*search) return cmd_search(o, search->count("--trials") > 0, search->count("--tol") > 0, out, err);
    if (*demo) return cmd_demo(o, out);
    return cmd_list(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace qop::cli

#include "qop/harness.hpp"

#include "qop/error.hpp"
#include "registry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace qop {

namespace {

using detail::CheckDef;
using detail::SearchDef;

const CheckDef* find_check(std::string_view id) {
  for (const auto& c : detail::check_table())
    if (id == c.id) return &c;
  return nullptr;
}

const SearchDef* find_search(std::string_view id) {
  for (const auto& s : detail::search_table())
    if (id == s.id) return &s;
  return nullptr;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double sanitize(double dev) { return std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev; }

Json check_witness(std::uint64_t trial_seed, const GeneratorConfig& cfg) {
  return {{"trial_seed", trial_seed},
          {"dim", cfg.dim},
          {"outcome_count", cfg.outcome_count},
          {"kraus_per_outcome", cfg.kraus_per_outcome}};
}

// Runs one check trial, mapping library errors to an infinite deviation.
double check_trial(const CheckDef& def, std::uint64_t trial_seed, const GeneratorConfig& cfg,
                   std::string& error) {
  try {
    Generator g(trial_seed);
    return sanitize(def.trial(g, cfg));
  } catch (const Error& e) {
    error = e.what();
    return std::numeric_limits<double>::infinity();
  }
}

void require_threshold(double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error(ErrorCode::BadSizes, "threshold must be positive and finite");
  }
}

}  // namespace

Json to_json(const CheckReport& report, bool include_elapsed) {
  // JSON has no infinity; the largest double stands in for it.
  const double dev = std::isfinite(report.max_deviation) ? report.max_deviation
                                                         : std::numeric_limits<double>::max();
  Json j = {{"check_id", report.check_id},
            {"trials", report.trials},
            {"max_deviation", dev},
            {"passed", report.passed}};
  if (report.witness) j["witness"] = *report.witness;
  if (include_elapsed) j["elapsed_ms"] = report.elapsed_ms;
  if (!report.reason.empty()) j["reason"] = report.reason;
  return j;
}

CheckReport check_report_from_json(const Json& j) {
  try {
    CheckReport r;
    r.check_id = j.at("check_id").get<std::string>();
    r.trials = j.at("trials").get<std::size_t>();
    r.max_deviation = j.at("max_deviation").get<double>();
    r.passed = j.at("passed").get<bool>();
    if (j.contains("witness")) r.witness = j.at("witness");
    r.elapsed_ms = j.value("elapsed_ms", 0.0);
    r.reason = j.value("reason", std::string{});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::vector<RegistryEntry> list_checks() {
  std::vector<RegistryEntry> out;
  for (const auto& c : detail::check_table()) out.push_back({c.id, c.summary});
  return out;
}

std::vector<RegistryEntry> list_searches() {
  std::vector<RegistryEntry> out;
  for (const auto& s : detail::search_table()) out.push_back({s.id, s.summary});
  return out;
}

bool is_check(std::string_view id) { return find_check(id) != nullptr; }
bool is_search(std::string_view id) { return find_search(id) != nullptr; }

bool is_conjecture(std::string_view id) {
  const SearchDef* s = find_search(id);
  return s != nullptr && s->conjecture;
}

CheckReport run_check(std::string_view check_id, const GeneratorConfig& cfg, double threshold) {
  const CheckDef* def = find_check(check_id);
  if (def == nullptr) throw Error(ErrorCode::UnknownCheck, std::string(check_id));
  cfg.validate();
  require_threshold(threshold);

  const Stopwatch clock;
  CheckReport report;
  report.check_id = def->id;
  report.trials = cfg.trials;
  if (cfg.trials == 0) {
    report.reason = "NoTrials";
    return report;
  }
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.seed ^ static_cast<std::uint64_t>(t);
    std::string error;
    const double dev = check_trial(*def, seed, cfg, error);
    if (!(dev <= threshold) && !report.witness) report.witness = check_witness(seed, cfg);
    if (!error.empty() && report.reason.empty()) report.reason = error;
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.passed = report.max_deviation <= threshold;
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

CheckReport run_search(std::string_view search_id, const GeneratorConfig& cfg, double threshold) {
  const CheckDef* check = find_check(search_id);
  const SearchDef* def = find_search(search_id);
  if (check == nullptr && def == nullptr) throw Error(ErrorCode::UnknownSearch, std::string(search_id));
  cfg.validate();
  require_threshold(threshold);

  const Stopwatch clock;
  CheckReport report;
  report.check_id = std::string(search_id);
  if (cfg.trials == 0) {
    report.reason = "NoTrials";
    return report;
  }
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.seed ^ static_cast<std::uint64_t>(t);
    double dev = 0.0;
    Json witness;
    if (check != nullptr) {
      std::string error;
      dev = check_trial(*check, seed, cfg, error);
      witness = check_witness(seed, cfg);
    } else {
      try {
        Generator g(seed);
        Json instance = def->sample(g, cfg);
        dev = sanitize(def->evaluate(instance));
        witness = {{"trial", t}, {"instance", std::move(instance)}};
      } catch (const Error& e) {
        report.trials = t + 1;
        report.reason = e.what();
        report.elapsed_ms = clock.elapsed_ms();
        return report;
      }
    }
    report.trials = t + 1;
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > threshold && std::isfinite(dev)) {
      report.witness = std::move(witness);
      report.passed = true;
      break;
    }
  }
  if (def != nullptr && def->conjecture) {
    report.reason = "Conjecture";
  } else if (!report.passed) {
    report.reason = "BudgetExhausted";
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

double replay_witness(std::string_view search_id, const Json& witness) {
  if (const SearchDef* def = find_search(search_id)) {
    try {
      return sanitize(def->evaluate(witness.at("instance")));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }
  if (const CheckDef* def = find_check(search_id)) {
    GeneratorConfig cfg;
    std::uint64_t seed = 0;
    try {
      seed = witness.at("trial_seed").get<std::uint64_t>();
      cfg.dim = witness.at("dim").get<std::size_t>();
      cfg.outcome_count = witness.at("outcome_count").get<std::size_t>();
      cfg.kraus_per_outcome = witness.at("kraus_per_outcome").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    cfg.validate();
    std::string error;
    return check_trial(*def, seed, cfg, error);
  }
  throw Error(ErrorCode::UnknownSearch, std::string(search_id));
}

CheckReport merge_reports(std::span<const CheckReport> reports) {
  CheckReport out;
  if (reports.empty()) {
    out.reason = "NoTrials";
    return out;
  }
  out.check_id = reports.front().check_id;
  out.passed = true;
  for (const auto& r : reports) {
    out.trials += r.trials;
    out.max_deviation = std::max(out.max_deviation, r.max_deviation);
    out.passed = out.passed && r.passed;
    out.elapsed_ms += r.elapsed_ms;
    if (!out.witness && r.witness) out.witness = r.witness;
    if (out.reason.empty()) out.reason = r.reason;
  }
  return out;
}

CheckReport run_check_sweep(std::string_view check_id, const GeneratorConfig& base, const SweepConfig& sweep,
                            double threshold) {
  const CheckDef* def = find_check(check_id);
  if (def == nullptr) throw Error(ErrorCode::UnknownCheck, std::string(check_id));
  std::vector<std::size_t> kraus = sweep.kraus_counts;
  if (!def->uses_instruments && !kraus.empty()) kraus.resize(1);

  std::vector<CheckReport> reports;
  for (std::size_t d : sweep.dims)
    for (std::size_t m : sweep.outcome_counts)
      for (std::size_t k : kraus) {
        GeneratorConfig cfg = base;
        cfg.dim = d;
        cfg.outcome_count = m;
        cfg.kraus_per_outcome = k;
        reports.push_back(run_check(check_id, cfg, threshold));
      }
  return merge_reports(reports);
}

}  // namespace qop

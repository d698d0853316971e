// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "qop/demo.hpp"
#include "qop/error.hpp"
#include "qop/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace qop;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

GeneratorConfig config(std::size_t dim, std::size_t outcomes, std::size_t kraus, std::size_t trials,
                       std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.dim = dim;
  cfg.outcome_count = outcomes;
  cfg.kraus_per_outcome = kraus;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

Outcome equality_suite() {
  const auto start = std::chrono::steady_clock::now();
  GeneratorConfig base;
  base.trials = 100;
  std::size_t count = 0;
  double worst = 0.0;
  std::string worst_id;
  std::string failed;
  for (const auto& e : list_checks()) {
    const CheckReport r = run_check_sweep(e.id, base, SweepConfig{}, 1e-9);
    ++count;
    if (r.max_deviation >= worst) {
      worst = r.max_deviation;
      worst_id = e.id;
    }
    if (!r.passed || !(r.max_deviation < 1e-9)) failed += " " + e.id;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = failed.empty() && count >= 30 && secs < 60.0;
  return {pass, fmt("%zu checks, worst %.3e (%s), %.1f s%s%s", count, worst, worst_id.c_str(), secs,
                    failed.empty() ? "" : ", failed:", failed.c_str())};
}

Outcome duality() {
  double worst = 0.0;
  for (std::size_t d : {2, 3, 4}) {
    Generator g(1000 + d);
    for (int i = 0; i < 100; ++i) {
      const std::size_t outcomes = 1 + g.index(3);
      const std::size_t kraus = 1 + g.index(2);
      const Instrument inst = g.instrument(d, numbered_labels(outcomes, "x"), kraus);
      const Observable hat = measured_observable(inst);
      for (int k = 0; k < 10; ++k) {
        const Matrix rho = g.state(d).matrix();
        for (std::size_t x = 0; x < outcomes; ++x) {
          const double lhs = (rho * hat.effect(x)).trace().real();
          const double rhs = inst.operation(x)(rho).trace().real();
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
  }
  return {worst < 1e-10, fmt("300 instruments x 10 states, worst |diff| %.3e", worst)};
}

Outcome special_types() {
  double hat_worst = 0.0;
  double commuting_worst = 0.0;
  bool commuting_lueders = true;
  double generic_min = std::numeric_limits<double>::infinity();
  bool generic_flagged = true;
  for (std::size_t d : {2, 3, 4}) {
    Generator g(2000 + d);
    for (int t = 0; t < 20; ++t) {
      const Observable a = g.observable(d, numbered_labels(2 + g.index(2), "x"));
      const Observable b = g.observable(d, numbered_labels(2 + g.index(2), "y"));
      const Instrument lab = seq_instrument(make_luders(a), make_luders(b));
      hat_worst = std::max(hat_worst, observable_distance(measured_observable(lab), seq_obs(a, b)));
      const InstrumentKind kind = classify(lab);
      generic_flagged = generic_flagged && !kind.lueders;
      generic_min = std::min(generic_min, kind.lueders_deviation);

      const Matrix basis = g.unitary(d);
      const Observable ca = g.diagonal_observable(basis, numbered_labels(2 + g.index(2), "x"));
      const Observable cb = g.diagonal_observable(basis, numbered_labels(2 + g.index(2), "y"));
      const Instrument commuting = seq_instrument(make_luders(ca), make_luders(cb));
      commuting_lueders = commuting_lueders && classify(commuting).type == InstrumentType::Lueders;
      commuting_worst =
          std::max(commuting_worst, instrument_choi_distance(commuting, make_luders(seq_obs(ca, cb))));
    }
  }
  const bool pass = hat_worst < 1e-9 && commuting_lueders && commuting_worst < 1e-9 && generic_flagged &&
                    generic_min > 1e-6;
  return {pass, fmt("hat %.3e; commuting Lueders=%s, Choi gap %.3e; noncommuting min deviation %.3e", hat_worst,
                    commuting_lueders ? "yes" : "no", commuting_worst, generic_min)};
}

Outcome searches() {
  bool pass = true;
  std::string detail;
  for (const char* id : {"N-reduce", "N-convex-seq", "N-hat-seq-kraus", "N-hat-seq-trivial", "N-part-luders",
                         "N-part-semitrivial"}) {
    const CheckReport r = run_search(id, config(2, 2, 1, 1000, 42), 1e-6);
    double replay = 0.0;
    bool ok = r.passed && r.witness && r.max_deviation > 1e-6;
    if (ok) {
      replay = replay_witness(id, Json::parse(r.witness->dump()));
      ok = std::abs(replay - r.max_deviation) <= 1e-12 * r.max_deviation;
    }
    pass = pass && ok;
    detail += fmt("%s%s %zu trials %.2e", detail.empty() ? "" : "; ", id, r.trials, r.max_deviation);
  }
  return {pass, detail};
}

Outcome demo() {
  const DemoResult r = run_demo(42);
  std::size_t failed = 0;
  for (const auto& c : r.checks) failed += c.passed ? 0 : 1;
  return {r.all_passed(), fmt("%zu example identities, %zu failed", r.checks.size(), failed)};
}

Outcome almost_coexistence() {
  double worst = 0.0;
  Generator g(4000);
  for (std::size_t n : {2, 3}) {
    for (int t = 0; t < 50; ++t) {
      const std::size_t d = 2 + g.index(3);
      std::vector<Observable> obs;
      std::vector<Label> anchors;
      for (std::size_t j = 0; j < n; ++j) {
        const LabelList labels = numbered_labels(2 + g.index(2), "o" + std::to_string(j) + "_");
        obs.push_back(g.observable(d, labels));
        anchors.push_back(labels[g.index(labels.size())]);
      }
      const std::vector<double> w = g.weights(n);
      const AlmostCoexistence ac = almost_coexist(w, obs, anchors);
      for (std::size_t j = 0; j < n; ++j) {
        const Observable got = part(ac.joint, ac.maps[j]);
        for (std::size_t x = 0; x < obs[j].size(); ++x) {
          Matrix want = w[j] * obs[j].effect(x);
          if (obs[j].labels()[x] == anchors[j]) want += (1.0 - w[j]) * identity(d);
          worst = std::max(worst, (got.effect(obs[j].labels()[x]) - want).norm());
        }
      }
    }
  }
  return {worst < 1e-9, fmt("n in {2,3}, 100 constructions, worst %.3e", worst)};
}

Outcome complete_positivity() {
  double min_eig = std::numeric_limits<double>::infinity();
  for (std::size_t d : {2, 3, 4}) {
    Generator g(5000 + d);
    for (int t = 0; t < 30; ++t) {
      const Instrument inst = g.instrument(d, numbered_labels(1 + g.index(3), "x"), 1 + g.index(2));
      for (std::size_t x = 0; x < inst.size(); ++x)
        min_eig = std::min(min_eig, min_eigenvalue(hermitize(choi(inst.operation(x)))));
    }
  }
  Matrix swap = Matrix::Zero(4, 4);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) swap(j * 2 + k, k * 2 + j) = 1.0;
  const double transpose_min = min_eigenvalue(swap);
  bool rejected = false;
  try {
    (void)Operation::from_choi(swap, 2);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NotCompletelyPositive;
  }
  const bool pass = min_eig > -1e-10 && transpose_min <= -1.0 + 1e-9 && rejected;
  return {pass, fmt("generated Choi min eigenvalue %.3e; transpose min eigenvalue %.6f, rejected=%s", min_eig,
                    transpose_min, rejected ? "yes" : "no")};
}

Outcome determinism() {
  auto suite = [] {
    Json doc = Json::array();
    GeneratorConfig base;
    base.trials = 10;
    base.seed = 1234;
    for (const auto& e : list_checks()) doc.push_back(to_json(run_check_sweep(e.id, base, SweepConfig{}), false));
    for (const auto& e : list_searches())
      doc.push_back(to_json(run_search(e.id, config(2, 2, 1, 1000, 1234)), false));
    return doc.dump(2);
  };
  const std::string a = suite();
  const std::string b = suite();
  return {a == b, fmt("two full runs, %zu bytes each, identical=%s", a.size(), a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"equality suite", equality_suite},
      {"measured-observable duality", duality},
      {"special-type laws", special_types},
      {"counterexample searches", searches},
      {"worked example reproduction", demo},
      {"almost-coexistence construction", almost_coexistence},
      {"complete positivity", complete_positivity},
      {"determinism", determinism},
  };
  int index = 0;
  bool all = true;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

#pragma once

// Seeded generators for every domain object, and the registries of theorem
// checks and counterexample searches that run on top of them.
//
// A check evaluates both sides of an identity on `trials` random instances
// and records the largest deviation. A search samples instances until one
// separates the two sides by more than a threshold, then keeps the instance
// as a JSON witness that can be replayed.

#include "qop/instrument.hpp"
#include "qop/observable.hpp"
#include "qop/serialize.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qop {

struct GeneratorConfig {
  std::uint64_t seed = 42;
  std::size_t dim = 2;
  std::size_t outcome_count = 2;
  std::size_t kraus_per_outcome = 1;
  std::size_t trials = 100;

  /// Throws BadSizes / DimensionOverflow.
  void validate() const;
};

/// Labels prefix0, prefix1, ...
LabelList numbered_labels(std::size_t count, std::string_view prefix);

class Generator {
 public:
  explicit Generator(std::uint64_t seed);

  std::mt19937_64& engine() noexcept { return rng_; }
  std::size_t index(std::size_t bound);  // uniform in [0, bound)
  double uniform();

  /// Matrix with i.i.d. standard complex Gaussian entries.
  Matrix gaussian(std::size_t dim);
  Matrix unitary(std::size_t dim);
  State state(std::size_t dim);
  std::vector<State> states(std::size_t dim, std::size_t count);
  /// A_x = S^{-1/2} G_x S^{-1/2} with G_x = K K^dag and S = sum_x G_x.
  Observable observable(std::size_t dim, const LabelList& labels);
  /// Observable diagonal in the basis given by the columns of `basis`.
  Observable diagonal_observable(const Matrix& basis, const LabelList& labels);
  /// S_{x,i} = K_{x,i} T^{-1/2} with T = sum K^dag K.
  Instrument instrument(std::size_t dim, const LabelList& labels, std::size_t kraus_per_outcome);
  /// Onto map built by covering every target once, then filling at random.
  OutcomeMap surjection(const LabelList& source, std::size_t target_size,
                        std::string_view target_prefix = "y");
  /// Rows drawn uniformly from the simplex.
  TransitionMatrix transition(const LabelList& rows, const LabelList& cols);
  /// Strictly positive weights summing to one.
  std::vector<double> weights(std::size_t count);

 private:
  Matrix inverse_sqrt_or_retry(const Matrix& s, bool& ok);

  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

State gen_state(const GeneratorConfig& cfg);
Observable gen_observable(const GeneratorConfig& cfg);
Instrument gen_instrument(const GeneratorConfig& cfg);
OutcomeMap gen_surjection(const GeneratorConfig& cfg, std::size_t source_size, std::size_t target_size);
TransitionMatrix gen_transition(const GeneratorConfig& cfg, std::size_t rows, std::size_t cols);

// ---------------------------------------------------------------------------

struct CheckReport {
  std::string check_id;
  std::size_t trials = 0;
  double max_deviation = 0.0;
  bool passed = false;
  std::optional<Json> witness;
  double elapsed_ms = 0.0;
  /// Empty on success; NoTrials, BudgetExhausted, Conjecture or an error message otherwise.
  std::string reason;
};

Json to_json(const CheckReport& report, bool include_elapsed = true);
CheckReport check_report_from_json(const Json& j);

struct RegistryEntry {
  std::string id;
  std::string summary;
};

std::vector<RegistryEntry> list_checks();
std::vector<RegistryEntry> list_searches();
bool is_check(std::string_view id);
bool is_search(std::string_view id);
/// Conjecture probes are reported but never asserted.
bool is_conjecture(std::string_view id);

/// Runs `cfg.trials` instances of a registered check. Passed iff every trial
/// deviates by at most `threshold`. Throws UnknownCheck.
CheckReport run_check(std::string_view check_id, const GeneratorConfig& cfg, double threshold = 1e-9);

/// Samples up to `cfg.trials` instances until one deviates by more than
/// `threshold`. Check ids are accepted too (they never yield witnesses).
/// Throws UnknownSearch.
CheckReport run_search(std::string_view search_id, const GeneratorConfig& cfg, double threshold = 1e-6);

/// Recomputes the deviation of a stored search witness.
double replay_witness(std::string_view search_id, const Json& witness);

struct SweepConfig {
  std::vector<std::size_t> dims{2, 3, 4};
  std::vector<std::size_t> outcome_counts{2, 3};
  std::vector<std::size_t> kraus_counts{1, 2};
};

/// Runs a check at every sweep point and merges the reports: trials add up,
/// deviations take the max, and it passes only if every point passes.
CheckReport run_check_sweep(std::string_view check_id, const GeneratorConfig& base,
                            const SweepConfig& sweep, double threshold = 1e-9);

CheckReport merge_reports(std::span<const CheckReport> reports);

}  // namespace qop

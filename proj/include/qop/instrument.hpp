#pragma once

// Operations, channels and finite instruments in Kraus form.
//
// The Kraus list is the canonical representation; Choi matrices are derived
// views. Two operations are equal when they act identically, so comparisons
// go through Choi matrices or probe-state outputs, never Kraus lists.

#include "qop/label.hpp"
#include "qop/matrix.hpp"
#include "qop/observable.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qop {

/// Completely positive trace-non-increasing map T -> sum_i S_i T S_i^dag.
class Operation {
 public:
  /// Throws NotTraceNonIncreasing unless sum_i S_i^dag S_i <= I.
  explicit Operation(std::vector<Matrix> kraus, const Tolerance& tol = {});
  /// Rebuilds a minimal Kraus list from a Choi matrix; throws
  /// NotCompletelyPositive when the Choi matrix is not PSD.
  static Operation from_choi(const Matrix& choi, std::size_t dim, const Tolerance& tol = {});
  static Operation zero(std::size_t dim);

  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  std::size_t dim() const noexcept { return dim_; }

  Matrix operator()(const Matrix& input) const;
  /// sum_i S_i^dag S_i, the adjoint map applied to the identity.
  Matrix kraus_sum() const;

 private:
  std::vector<Matrix> kraus_;
  std::size_t dim_ = 0;
};

bool is_channel(const Operation& op, const Tolerance& tol = {});

/// Choi matrix sum_{jk} E_jk (x) op(E_jk), dimension dim^2.
Matrix choi(const Operation& op);
/// Minimal Kraus list obtained from the Choi eigendecomposition.
Operation compress(const Operation& op, const Tolerance& tol = {});

PartialState apply(const Operation& op, const State& rho, const Tolerance& tol = {});

class Instrument {
 public:
  using Outcome = std::pair<Label, Operation>;

  /// Throws InvalidInstrument unless the total operation is a channel.
  explicit Instrument(std::vector<Outcome> outcomes, const Tolerance& tol = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const LabelList& labels() const noexcept { return labels_; }
  const Operation& operation(std::size_t i) const { return operations_.at(i); }
  /// Throws UnknownLabel.
  const Operation& operation(const Label& label) const;
  std::optional<std::size_t> index_of(const Label& label) const;

  /// Sum of all outcome operations.
  Operation total() const;

 private:
  std::size_t dim_ = 0;
  LabelList labels_;
  std::vector<Operation> operations_;
  std::unordered_map<Label, std::size_t> index_;
};

Distribution instrument_distribution(const Instrument& inst, const State& rho,
                                     const Tolerance& tol = {});
/// The unique observable with tr(rho Ihat_x) = tr[I_x(rho)].
Observable measured_observable(const Instrument& inst, const Tolerance& tol = {});

Instrument part_instrument(const Instrument& inst, const OutcomeMap& f, const Tolerance& tol = {});
Instrument post_process_instrument(const TransitionMatrix& mu, const Instrument& inst,
                                   const Tolerance& tol = {});
Instrument gen_convex_instrument(std::span<const double> weights,
                                 std::span<const Instrument> instruments, const Tolerance& tol = {});
/// (I o J)_(x,y)(rho) = J_y(I_x(rho)).
Instrument seq_instrument(const Instrument& first, const Instrument& second,
                          const Tolerance& tol = {});
/// (J | I)_y(rho) = J_y(I_total(rho)).
Instrument conditional_instrument(const Instrument& second, const Instrument& first,
                                  const Tolerance& tol = {});

/// One Kraus operator per outcome; throws NotNormalized unless sum S^dag S = I.
Instrument make_kraus(const std::vector<std::pair<Label, Matrix>>& operators,
                      const Tolerance& tol = {});
Instrument make_luders(const Observable& a, const Tolerance& tol = {});
Instrument make_trivial(const Observable& a, const State& alpha, const Tolerance& tol = {});
/// I_x(rho) = tr(rho A_x) alpha_x, alpha ordered like A's outcomes.
Instrument make_semitrivial(const Observable& a, std::span<const State> alpha,
                            const Tolerance& tol = {});

enum class InstrumentType { Kraus, Lueders, Trivial, Semitrivial, General };

std::string_view to_string(InstrumentType type);

/// Classification result. Each deviation is the distance from the nearest
/// member of that type; a flag is set when its deviation is within atol.
struct InstrumentKind {
  InstrumentType type = InstrumentType::General;
  bool kraus = false;
  bool lueders = false;
  bool trivial = false;
  bool semitrivial = false;
  /// max_x of the Choi spectrum beyond its largest eigenvalue.
  double kraus_deviation = 0.0;
  /// max_x || choi(I_x) - choi(Ihat_x^{1/2} . Ihat_x^{1/2}) ||_F.
  double lueders_deviation = 0.0;
  /// max_x || choi(I_x) - Ihat_x^T (x) alpha_x ||_F.
  double semitrivial_deviation = 0.0;
  /// semitrivial_deviation combined with the spread of the alpha_x.
  double trivial_deviation = 0.0;
  std::optional<Observable> observable;
  /// Output state per outcome; empty matrix where Ihat_x vanishes.
  std::vector<Matrix> states;
};

InstrumentKind classify(const Instrument& inst, const Tolerance& tol = {});

/// True when every pair of effects commutes within atol (Frobenius norm).
bool commutes(const Observable& a, const Observable& b, const Tolerance& tol = {});

/// Max Frobenius distance between Choi matrices of same-labelled
/// operations; +inf when the outcome spaces differ.
double instrument_choi_distance(const Instrument& a, const Instrument& b);
/// Max trace distance between same-labelled outputs over the probe states;
/// +inf when the outcome spaces differ.
double instrument_output_distance(const Instrument& a, const Instrument& b,
                                  std::span<const State> probes);

/// Half the trace norm of a - b (both Hermitian).
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace qop

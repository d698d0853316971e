#pragma once

// Effects, states and finite observables (POVMs) together with the ways
// observables combine: parts along outcome maps, post-processing by
// transition matrices, generalized convex combinations, noise, sequential
// products, conditioning, tensor products and reductions.
//
// Every constructor validates its invariants against a Tolerance and throws
// qop::Error on violation. Values are immutable once constructed.

#include "qop/label.hpp"
#include "qop/matrix.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qop {

using LabelList = std::vector<Label>;

/// Throws DuplicateLabel if `labels` has repeats or is empty.
void require_distinct(const LabelList& labels, const char* what);

/// Operator a with 0 <= a <= I.
class Effect {
 public:
  explicit Effect(Matrix matrix, const Tolerance& tol = {});

  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  Matrix matrix_;
};

/// Throws InvalidEffect unless 0 <= m <= I within tolerance.
void require_effect(const Matrix& m, const Tolerance& tol);

/// Density operator: PSD with unit trace.
class State {
 public:
  explicit State(Matrix matrix, const Tolerance& tol = {});
  static State maximally_mixed(std::size_t dim);

  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  Matrix matrix_;
};

/// PSD operator with trace at most one (output of an operation).
class PartialState {
 public:
  explicit PartialState(Matrix matrix, const Tolerance& tol = {});

  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  double trace() const { return matrix_.trace().real(); }

 private:
  Matrix matrix_;
};

class Observable {
 public:
  using Outcome = std::pair<Label, Matrix>;

  explicit Observable(std::vector<Outcome> outcomes, const Tolerance& tol = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const LabelList& labels() const noexcept { return labels_; }
  const Matrix& effect(std::size_t i) const { return effects_.at(i); }
  /// Throws UnknownLabel.
  const Matrix& effect(const Label& label) const;
  std::optional<std::size_t> index_of(const Label& label) const;
  bool contains(const Label& label) const { return index_of(label).has_value(); }

 private:
  std::size_t dim_ = 0;
  LabelList labels_;
  std::vector<Matrix> effects_;
  std::unordered_map<Label, std::size_t> index_;
};

/// Row-stochastic matrix mu(x, y) from source labels to target labels.
class TransitionMatrix {
 public:
  TransitionMatrix(LabelList rows, LabelList cols, Eigen::MatrixXd entries,
                   const Tolerance& tol = {});

  static TransitionMatrix identity(const LabelList& labels);

  const LabelList& rows() const noexcept { return rows_; }
  const LabelList& cols() const noexcept { return cols_; }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }
  std::optional<std::size_t> row_index(const Label& label) const;

 private:
  LabelList rows_;
  LabelList cols_;
  Eigen::MatrixXd entries_;
  std::unordered_map<Label, std::size_t> row_index_;
};

/// Total function between finite label sets.
class OutcomeMap {
 public:
  OutcomeMap(const std::vector<std::pair<Label, Label>>& mapping, LabelList target);

  static OutcomeMap identity(const LabelList& labels);
  static OutcomeMap constant(const LabelList& source, const Label& value);
  static OutcomeMap from_function(const LabelList& source,
                                  const std::function<Label(const Label&)>& fn);

  const LabelList& source() const noexcept { return source_; }
  const LabelList& target() const noexcept { return target_; }
  bool is_surjective() const noexcept { return surjective_; }
  /// Throws UnknownLabel when `x` is outside the source.
  const Label& operator()(const Label& x) const;
  std::size_t image_index(std::size_t source_index) const { return image_.at(source_index); }
  bool defined_on(const Label& x) const { return source_index_.contains(x); }

  /// Restriction to `subset`, with target shrunk to the image of `subset`.
  OutcomeMap restrict_to(const LabelList& subset) const;

 private:
  LabelList source_;
  LabelList target_;
  std::vector<std::size_t> image_;
  std::unordered_map<Label, std::size_t> source_index_;
  bool surjective_ = false;
};

class Distribution {
 public:
  Distribution(LabelList labels, std::vector<double> values, const Tolerance& tol = {});

  const LabelList& labels() const noexcept { return labels_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator()(const Label& label) const;
  double at(std::size_t i) const { return values_.at(i); }

 private:
  LabelList labels_;
  std::vector<double> values_;
  std::unordered_map<Label, std::size_t> index_;
};

/// Certificate that a and b coexist: both are parts of `joint`.
class CoexistenceWitness {
 public:
  /// Throws InvalidWitness unless part(joint, to_a) == a and part(joint, to_b) == b.
  CoexistenceWitness(Observable joint, OutcomeMap to_a, OutcomeMap to_b, const Observable& a,
                     const Observable& b, const Tolerance& tol = {});
  static CoexistenceWitness from_joint(Observable joint, OutcomeMap to_a, OutcomeMap to_b,
                                       const Tolerance& tol = {});

  const Observable& joint() const noexcept { return joint_; }
  const OutcomeMap& to_a() const noexcept { return to_a_; }
  const OutcomeMap& to_b() const noexcept { return to_b_; }
  const Observable& a() const noexcept { return a_; }
  const Observable& b() const noexcept { return b_; }

 private:
  Observable joint_;
  OutcomeMap to_a_;
  OutcomeMap to_b_;
  Observable a_;
  Observable b_;
};

struct AlmostCoexistence {
  Observable joint;
  std::vector<OutcomeMap> maps;
};

/// a^{1/2} b a^{1/2} on raw matrices; result is Hermitized.
Matrix sequential_product(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

Effect seq_effect(const Effect& a, const Effect& b, const Tolerance& tol = {});
Effect effect_of_set(const Observable& a, std::span<const Label> set, const Tolerance& tol = {});
Distribution distribution(const Observable& a, const State& rho, const Tolerance& tol = {});

Observable part(const Observable& a, const OutcomeMap& f, const Tolerance& tol = {});
Observable post_process(const TransitionMatrix& mu, const Observable& a, const Tolerance& tol = {});
/// Post_(alpha, B)(A): mu(x, y) = tr(alpha_x B_y), alpha ordered like A's outcomes.
Observable post_process_relative(std::span<const State> alpha, const Observable& b,
                                 const Observable& a, const Tolerance& tol = {});
Distribution post_process_distribution(const TransitionMatrix& mu, const Distribution& nu,
                                       const Tolerance& tol = {});

/// Generalized convex combination over the ordered union of outcome spaces.
Observable gen_convex(std::span<const double> weights, std::span<const Observable> observables,
                      const Tolerance& tol = {});
Observable identity_observable(const LabelList& labels, const Label& at, std::size_t dim);
/// (1 - lambda) I^{at} + lambda A.
Observable noisy_observable(const Observable& a, double lambda, const Label& at,
                            const Tolerance& tol = {});
/// Convex union A of the A^j with maps f_j such that part(A, f_j) is A^j with
/// noise anchored at anchors[j]. Outcome spaces must be pairwise disjoint.
AlmostCoexistence almost_coexist(std::span<const double> weights,
                                 std::span<const Observable> observables,
                                 std::span<const Label> anchors, const Tolerance& tol = {});

/// (A o B)_(x,y) = A_x o B_y over the product space.
Observable seq_obs(const Observable& a, const Observable& b, const Tolerance& tol = {});
/// (B | A)_y = sum_x A_x o B_y.
Observable conditioned(const Observable& b, const Observable& a, const Tolerance& tol = {});

Observable tensor_obs(const Observable& a, const Observable& b, const Tolerance& tol = {});
TransitionMatrix tensor_transition(const TransitionMatrix& mu, const TransitionMatrix& nu,
                                   const Tolerance& tol = {});
OutcomeMap product_outcome_map(const OutcomeMap& f, const OutcomeMap& g);
/// Reduced observable on the kept factor: tr over the other factor divided by its dimension.
Observable reduce_obs(const Observable& a, SplitDims dims, Subsystem keep,
                      const Tolerance& tol = {});

/// Joint distribution on Omega_A x Omega_B induced by a coexistence witness.
Distribution joint_distribution_product(const CoexistenceWitness& w, const State& rho,
                                        const Tolerance& tol = {});

/// Relabels every outcome x as (tag, x).
Observable tag_labels(const Observable& a, const Label& tag, const Tolerance& tol = {});

/// Max Frobenius distance between same-labelled effects; +inf when the label
/// sets or dimensions differ.
double observable_distance(const Observable& a, const Observable& b);
/// Max absolute difference between same-labelled entries; +inf on label mismatch.
double distribution_distance(const Distribution& p, const Distribution& q);

/// Ordered union of label lists, keeping first appearances.
LabelList ordered_union(std::span<const LabelList> lists);

/// Throws BadWeights unless every weight is positive and they sum to 1.
void require_convex_weights(std::span<const double> weights, std::size_t count,
                            const Tolerance& tol);

}  // namespace qop

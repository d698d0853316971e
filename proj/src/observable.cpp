#include "qop/observable.hpp"

#include "qop/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

namespace qop {

namespace {

std::unordered_map<Label, std::size_t> build_index(const LabelList& labels) {
  std::unordered_map<Label, std::size_t> index;
  index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  return index;
}

std::size_t dim_of(const Matrix& m) { return static_cast<std::size_t>(m.rows()); }

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_positive_definite_state(const Matrix& m, const Tolerance& tol, const char* what) {
  require_square(m);
  if (!is_hermitian(m, tol)) throw Error(ErrorCode::InvalidState, std::string(what) + " not Hermitian");
  const double lo = min_eigenvalue(m, tol);
  if (lo < -tol.eig_floor) {
    throw Error(ErrorCode::InvalidState,
                std::string(what) + " has negative eigenvalue " + std::to_string(lo));
  }
}

}  // namespace

void require_distinct(const LabelList& labels, const char* what) {
  if (labels.empty()) throw Error(ErrorCode::InvalidObservable, std::string(what) + " is empty");
  std::unordered_set<Label> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::DuplicateLabel, std::string(what) + " repeats " + label.text());
    }
  }
}

void require_effect(const Matrix& m, const Tolerance& tol) {
  require_square(m);
  if (!is_hermitian(m, tol)) throw Error(ErrorCode::InvalidEffect, "effect is not Hermitian");
  const RealVector values = hermitian_eigenvalues(m, tol);
  if (values(0) < -tol.eig_floor || values(values.size() - 1) > 1.0 + tol.eig_floor) {
    throw Error(ErrorCode::InvalidEffect, "spectrum [" + std::to_string(values(0)) + ", " +
                                              std::to_string(values(values.size() - 1)) +
                                              "] outside [0, 1]");
  }
}

Effect::Effect(Matrix matrix, const Tolerance& tol) : matrix_(std::move(matrix)) {
  require_effect(matrix_, tol);
}

State::State(Matrix matrix, const Tolerance& tol) : matrix_(std::move(matrix)) {
  require_positive_definite_state(matrix_, tol, "state");
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol.atol) {
    throw Error(ErrorCode::InvalidState, "trace " + std::to_string(tr) + " != 1");
  }
}

State State::maximally_mixed(std::size_t dim) {
  return State(identity(dim) / static_cast<double>(dim));
}

PartialState::PartialState(Matrix matrix, const Tolerance& tol) : matrix_(std::move(matrix)) {
  require_positive_definite_state(matrix_, tol, "partial state");
  const double tr = matrix_.trace().real();
  if (tr > 1.0 + tol.atol) {
    throw Error(ErrorCode::InvalidState, "trace " + std::to_string(tr) + " > 1");
  }
}

// ---------------------------------------------------------------------------

Observable::Observable(std::vector<Outcome> outcomes, const Tolerance& tol) {
  if (outcomes.empty()) throw Error(ErrorCode::InvalidObservable, "no outcomes");
  dim_ = dim_of(outcomes.front().second);
  labels_.reserve(outcomes.size());
  effects_.reserve(outcomes.size());
  Matrix total = Matrix::Zero(outcomes.front().second.rows(), outcomes.front().second.rows());
  for (auto& [label, effect] : outcomes) {
    require_square(effect);
    require_dim(dim_of(effect), dim_, "observable effects");
    require_effect(effect, tol);
    total += effect;
    labels_.push_back(label);
    effects_.push_back(std::move(effect));
  }
  require_distinct(labels_, "outcome space");
  const double err = (total - identity(dim_)).norm();
  if (err > tol.atol) {
    throw Error(ErrorCode::InvalidObservable, "effects sum to I only within " + std::to_string(err));
  }
  index_ = build_index(labels_);
}

const Matrix& Observable::effect(const Label& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw Error(ErrorCode::UnknownLabel, label.text());
  return effects_[it->second];
}

std::optional<std::size_t> Observable::index_of(const Label& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

TransitionMatrix::TransitionMatrix(LabelList rows, LabelList cols, Eigen::MatrixXd entries,
                                   const Tolerance& tol)
    : rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
  require_distinct(rows_, "transition rows");
  require_distinct(cols_, "transition columns");
  if (entries_.rows() != static_cast<Eigen::Index>(rows_.size()) ||
      entries_.cols() != static_cast<Eigen::Index>(cols_.size())) {
    throw Error(ErrorCode::InvalidTransition, "entry shape does not match labels");
  }
  if (!entries_.allFinite()) throw Error(ErrorCode::InvalidTransition, "non-finite entry");
  if (entries_.minCoeff() < -tol.atol || entries_.maxCoeff() > 1.0 + tol.atol) {
    throw Error(ErrorCode::InvalidTransition, "entries must lie in [0, 1]");
  }
  for (Eigen::Index r = 0; r < entries_.rows(); ++r) {
    const double sum = entries_.row(r).sum();
    if (std::abs(sum - 1.0) > tol.atol) {
      throw Error(ErrorCode::InvalidTransition,
                  "row " + rows_[static_cast<std::size_t>(r)].text() + " sums to " + std::to_string(sum));
    }
  }
  row_index_ = build_index(rows_);
}

TransitionMatrix TransitionMatrix::identity(const LabelList& labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  return TransitionMatrix(labels, labels, Eigen::MatrixXd::Identity(n, n));
}

std::optional<std::size_t> TransitionMatrix::row_index(const Label& label) const {
  const auto it = row_index_.find(label);
  if (it == row_index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

OutcomeMap::OutcomeMap(const std::vector<std::pair<Label, Label>>& mapping, LabelList target)
    : target_(std::move(target)) {
  require_distinct(target_, "map target");
  const auto target_index = build_index(target_);
  std::vector<bool> hit(target_.size(), false);
  source_.reserve(mapping.size());
  image_.reserve(mapping.size());
  for (const auto& [x, y] : mapping) {
    const auto it = target_index.find(y);
    if (it == target_index.end()) {
      throw Error(ErrorCode::UnknownLabel, "image " + y.text() + " not in target");
    }
    source_.push_back(x);
    image_.push_back(it->second);
    hit[it->second] = true;
  }
  require_distinct(source_, "map source");
  source_index_ = build_index(source_);
  surjective_ = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

OutcomeMap OutcomeMap::identity(const LabelList& labels) {
  std::vector<std::pair<Label, Label>> mapping;
  for (const auto& x : labels) mapping.emplace_back(x, x);
  return OutcomeMap(mapping, labels);
}

OutcomeMap OutcomeMap::constant(const LabelList& source, const Label& value) {
  std::vector<std::pair<Label, Label>> mapping;
  for (const auto& x : source) mapping.emplace_back(x, value);
  return OutcomeMap(mapping, {value});
}

OutcomeMap OutcomeMap::from_function(const LabelList& source,
                                     const std::function<Label(const Label&)>& fn) {
  std::vector<std::pair<Label, Label>> mapping;
  LabelList target;
  std::unordered_set<Label> seen;
  for (const auto& x : source) {
    Label y = fn(x);
    if (seen.insert(y).second) target.push_back(y);
    mapping.emplace_back(x, std::move(y));
  }
  return OutcomeMap(mapping, std::move(target));
}

const Label& OutcomeMap::operator()(const Label& x) const {
  const auto it = source_index_.find(x);
  if (it == source_index_.end()) throw Error(ErrorCode::UnknownLabel, x.text() + " not in map source");
  return target_[image_[it->second]];
}

OutcomeMap OutcomeMap::restrict_to(const LabelList& subset) const {
  return from_function(subset, [this](const Label& x) { return (*this)(x); });
}

// ---------------------------------------------------------------------------

Distribution::Distribution(LabelList labels, std::vector<double> values, const Tolerance& tol)
    : labels_(std::move(labels)), values_(std::move(values)) {
  require_distinct(labels_, "distribution support");
  if (labels_.size() != values_.size()) {
    throw Error(ErrorCode::InvalidDistribution, "label/value count mismatch");
  }
  double sum = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v) || v < -tol.atol) {
      throw Error(ErrorCode::InvalidDistribution, "entry " + std::to_string(v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol.atol) {
    throw Error(ErrorCode::InvalidDistribution, "entries sum to " + std::to_string(sum));
  }
  index_ = build_index(labels_);
}

double Distribution::operator()(const Label& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw Error(ErrorCode::UnknownLabel, label.text());
  return values_[it->second];
}

// ---------------------------------------------------------------------------

namespace {

/// Checks that `f` is defined exactly on the outcome space of `a`.
std::vector<std::size_t> align_map(const Observable& a, const OutcomeMap& f) {
  if (f.source().size() != a.size()) {
    throw Error(ErrorCode::LabelMismatch, "map source differs from outcome space");
  }
  std::vector<std::size_t> image(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!f.defined_on(a.labels()[i])) {
      throw Error(ErrorCode::UnknownLabel, a.labels()[i].text() + " not mapped");
    }
  }
  for (std::size_t s = 0; s < f.source().size(); ++s) {
    image[*a.index_of(f.source()[s])] = f.image_index(s);
  }
  return image;
}

}  // namespace

CoexistenceWitness::CoexistenceWitness(Observable joint, OutcomeMap to_a, OutcomeMap to_b,
                                       const Observable& a, const Observable& b,
                                       const Tolerance& tol)
    : joint_(std::move(joint)), to_a_(std::move(to_a)), to_b_(std::move(to_b)), a_(a), b_(b) {
  try {
    const double da = observable_distance(part(joint_, to_a_, tol), a_);
    const double db = observable_distance(part(joint_, to_b_, tol), b_);
    if (!(da <= tol.atol) || !(db <= tol.atol)) {
      throw Error(ErrorCode::InvalidWitness, "parts deviate by " + std::to_string(std::max(da, db)));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidWitness) throw;
    throw Error(ErrorCode::InvalidWitness, e.what());
  }
}

CoexistenceWitness CoexistenceWitness::from_joint(Observable joint, OutcomeMap to_a,
                                                  OutcomeMap to_b, const Tolerance& tol) {
  Observable a = part(joint, to_a, tol);
  Observable b = part(joint, to_b, tol);
  return CoexistenceWitness(std::move(joint), std::move(to_a), std::move(to_b), a, b, tol);
}

// ---------------------------------------------------------------------------

Matrix sequential_product(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  require_same_dim(a, b);
  const Matrix root = psd_sqrt(a, tol);
  return hermitize(root * b * root);
}

Effect seq_effect(const Effect& a, const Effect& b, const Tolerance& tol) {
  require_dim(a.dim(), b.dim(), "seq_effect");
  return Effect(sequential_product(a.matrix(), b.matrix(), tol), tol);
}

Effect effect_of_set(const Observable& a, std::span<const Label> set, const Tolerance& tol) {
  std::unordered_set<Label> seen;
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(a.dim()), static_cast<Eigen::Index>(a.dim()));
  for (const auto& x : set) {
    const Matrix& e = a.effect(x);
    if (seen.insert(x).second) sum += e;
  }
  return Effect(std::move(sum), tol);
}

Distribution distribution(const Observable& a, const State& rho, const Tolerance& tol) {
  require_dim(a.dim(), rho.dim(), "distribution");
  std::vector<double> values;
  values.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    values.push_back((rho.matrix() * a.effect(i)).trace().real());
  }
  return Distribution(a.labels(), std::move(values), tol);
}

Observable part(const Observable& a, const OutcomeMap& f, const Tolerance& tol) {
  if (!f.is_surjective()) throw Error(ErrorCode::NotSurjective, "part requires a surjection");
  const auto image = align_map(a, f);
  const auto n = static_cast<Eigen::Index>(a.dim());
  std::vector<Matrix> sums(f.target().size(), Matrix::Zero(n, n));
  for (std::size_t i = 0; i < a.size(); ++i) sums[image[i]] += a.effect(i);
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t j = 0; j < sums.size(); ++j) outcomes.emplace_back(f.target()[j], std::move(sums[j]));
  return Observable(std::move(outcomes), tol);
}

namespace {

std::vector<std::size_t> align_rows(const LabelList& rows, const LabelList& labels,
                                    const std::function<std::optional<std::size_t>(const Label&)>& lookup) {
  if (rows.size() != labels.size()) {
    throw Error(ErrorCode::LabelMismatch, "transition rows differ from outcome space");
  }
  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto r = lookup(labels[i]);
    if (!r) throw Error(ErrorCode::LabelMismatch, labels[i].text() + " has no transition row");
    order[i] = *r;
  }
  return order;
}

}  // namespace

Observable post_process(const TransitionMatrix& mu, const Observable& a, const Tolerance& tol) {
  const auto rows = align_rows(mu.rows(), a.labels(),
                               [&](const Label& x) { return mu.row_index(x); });
  const auto n = static_cast<Eigen::Index>(a.dim());
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t y = 0; y < mu.cols().size(); ++y) {
    Matrix sum = Matrix::Zero(n, n);
    for (std::size_t x = 0; x < a.size(); ++x) sum += mu(rows[x], y) * a.effect(x);
    outcomes.emplace_back(mu.cols()[y], std::move(sum));
  }
  return Observable(std::move(outcomes), tol);
}

Observable post_process_relative(std::span<const State> alpha, const Observable& b,
                                 const Observable& a, const Tolerance& tol) {
  if (alpha.size() != a.size()) {
    throw Error(ErrorCode::LabelMismatch, "need one state per outcome of A");
  }
  Eigen::MatrixXd mu(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t x = 0; x < a.size(); ++x) {
    require_dim(alpha[x].dim(), b.dim(), "post_process_relative");
    for (std::size_t y = 0; y < b.size(); ++y) {
      mu(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
          (alpha[x].matrix() * b.effect(y)).trace().real();
    }
  }
  return post_process(TransitionMatrix(a.labels(), b.labels(), std::move(mu), tol), a, tol);
}

Distribution post_process_distribution(const TransitionMatrix& mu, const Distribution& nu,
                                       const Tolerance& tol) {
  std::unordered_map<Label, std::size_t> nu_index;
  for (std::size_t i = 0; i < nu.size(); ++i) nu_index.emplace(nu.labels()[i], i);
  const auto rows = align_rows(mu.rows(), nu.labels(),
                               [&](const Label& x) { return mu.row_index(x); });
  std::vector<double> values(mu.cols().size(), 0.0);
  for (std::size_t y = 0; y < values.size(); ++y) {
    for (std::size_t x = 0; x < nu.size(); ++x) values[y] += mu(rows[x], y) * nu.at(x);
  }
  return Distribution(mu.cols(), std::move(values), tol);
}

void require_convex_weights(std::span<const double> weights, std::size_t count,
                            const Tolerance& tol) {
  if (weights.size() != count || count == 0) {
    throw Error(ErrorCode::BadWeights, "need one weight per term");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::BadWeights, "weights must be strictly positive, got " + std::to_string(w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol.atol) {
    throw Error(ErrorCode::BadWeights, "weights sum to " + std::to_string(sum));
  }
}

LabelList ordered_union(std::span<const LabelList> lists) {
  LabelList out;
  std::unordered_set<Label> seen;
  for (const auto& list : lists) {
    for (const auto& x : list) {
      if (seen.insert(x).second) out.push_back(x);
    }
  }
  return out;
}

Observable gen_convex(std::span<const double> weights, std::span<const Observable> observables,
                      const Tolerance& tol) {
  require_convex_weights(weights, observables.size(), tol);
  const std::size_t dim = observables.front().dim();
  std::vector<LabelList> spaces;
  for (const auto& obs : observables) {
    require_dim(obs.dim(), dim, "gen_convex");
    spaces.push_back(obs.labels());
  }
  const LabelList omega = ordered_union(spaces);
  const auto n = static_cast<Eigen::Index>(dim);
  std::vector<Observable::Outcome> outcomes;
  for (const auto& x : omega) {
    Matrix sum = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < observables.size(); ++i) {
      if (const auto idx = observables[i].index_of(x)) sum += weights[i] * observables[i].effect(*idx);
    }
    outcomes.emplace_back(x, std::move(sum));
  }
  return Observable(std::move(outcomes), tol);
}

Observable identity_observable(const LabelList& labels, const Label& at, std::size_t dim) {
  require_distinct(labels, "outcome space");
  if (std::find(labels.begin(), labels.end(), at) == labels.end()) {
    throw Error(ErrorCode::UnknownLabel, at.text() + " not in outcome space");
  }
  const auto n = static_cast<Eigen::Index>(dim);
  std::vector<Observable::Outcome> outcomes;
  for (const auto& x : labels) {
    outcomes.emplace_back(x, x == at ? identity(dim) : Matrix(Matrix::Zero(n, n)));
  }
  return Observable(std::move(outcomes));
}

Observable noisy_observable(const Observable& a, double lambda, const Label& at,
                            const Tolerance& tol) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::BadWeights, "noise weight must lie in [0, 1]");
  }
  if (!a.contains(at)) throw Error(ErrorCode::UnknownLabel, at.text() + " not in outcome space");
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Matrix e = lambda * a.effect(i);
    if (a.labels()[i] == at) e += (1.0 - lambda) * identity(a.dim());
    outcomes.emplace_back(a.labels()[i], std::move(e));
  }
  return Observable(std::move(outcomes), tol);
}

AlmostCoexistence almost_coexist(std::span<const double> weights,
                                 std::span<const Observable> observables,
                                 std::span<const Label> anchors, const Tolerance& tol) {
  const std::size_t count = observables.size();
  if (count == 0 || weights.size() != count || anchors.size() != count) {
    throw Error(ErrorCode::BadWeights, "need one weight and one anchor per observable");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::BadWeights, "weights must lie in [0, 1]");
    total += w;
  }
  if (std::abs(total - 1.0) > tol.atol) {
    throw Error(ErrorCode::BadWeights, "weights sum to " + std::to_string(total));
  }
  std::unordered_set<Label> seen;
  const std::size_t dim = observables.front().dim();
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t j = 0; j < count; ++j) {
    const Observable& obs = observables[j];
    require_dim(obs.dim(), dim, "almost_coexist");
    if (!obs.contains(anchors[j])) {
      throw Error(ErrorCode::UnknownLabel, "anchor " + anchors[j].text() + " not in outcome space");
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
      if (!seen.insert(obs.labels()[i]).second) {
        throw Error(ErrorCode::OverlappingLabels, obs.labels()[i].text() + " appears twice");
      }
      outcomes.emplace_back(obs.labels()[i], weights[j] * obs.effect(i));
    }
  }
  Observable joint(std::move(outcomes), tol);

  std::vector<OutcomeMap> maps;
  maps.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const Observable& obs = observables[j];
    std::vector<std::pair<Label, Label>> mapping;
    for (const auto& x : joint.labels()) mapping.emplace_back(x, obs.contains(x) ? x : anchors[j]);
    maps.emplace_back(mapping, obs.labels());
  }
  return {std::move(joint), std::move(maps)};
}

Observable seq_obs(const Observable& a, const Observable& b, const Tolerance& tol) {
  require_dim(a.dim(), b.dim(), "seq_obs");
  std::vector<Observable::Outcome> outcomes;
  outcomes.reserve(a.size() * b.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    const Matrix root = psd_sqrt(a.effect(x), tol);
    for (std::size_t y = 0; y < b.size(); ++y) {
      outcomes.emplace_back(Label::pair(a.labels()[x], b.labels()[y]),
                            hermitize(root * b.effect(y) * root));
    }
  }
  return Observable(std::move(outcomes), tol);
}

Observable conditioned(const Observable& b, const Observable& a, const Tolerance& tol) {
  require_dim(a.dim(), b.dim(), "conditioned");
  const auto n = static_cast<Eigen::Index>(a.dim());
  std::vector<Matrix> roots;
  roots.reserve(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) roots.push_back(psd_sqrt(a.effect(x), tol));
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t y = 0; y < b.size(); ++y) {
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& root : roots) sum += root * b.effect(y) * root;
    outcomes.emplace_back(b.labels()[y], hermitize(sum));
  }
  return Observable(std::move(outcomes), tol);
}

Observable tensor_obs(const Observable& a, const Observable& b, const Tolerance& tol) {
  std::vector<Observable::Outcome> outcomes;
  outcomes.reserve(a.size() * b.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      outcomes.emplace_back(Label::pair(a.labels()[x], b.labels()[y]), kron(a.effect(x), b.effect(y)));
    }
  }
  return Observable(std::move(outcomes), tol);
}

TransitionMatrix tensor_transition(const TransitionMatrix& mu, const TransitionMatrix& nu,
                                   const Tolerance& tol) {
  LabelList rows;
  LabelList cols;
  for (const auto& x : mu.rows())
    for (const auto& u : nu.rows()) rows.push_back(Label::pair(x, u));
  for (const auto& y : mu.cols())
    for (const auto& v : nu.cols()) cols.push_back(Label::pair(y, v));
  const auto nr = static_cast<Eigen::Index>(nu.rows().size());
  const auto nc = static_cast<Eigen::Index>(nu.cols().size());
  Eigen::MatrixXd entries(mu.entries().rows() * nr, mu.entries().cols() * nc);
  for (Eigen::Index x = 0; x < mu.entries().rows(); ++x)
    for (Eigen::Index y = 0; y < mu.entries().cols(); ++y)
      entries.block(x * nr, y * nc, nr, nc) = mu.entries()(x, y) * nu.entries();
  return TransitionMatrix(std::move(rows), std::move(cols), std::move(entries), tol);
}

OutcomeMap product_outcome_map(const OutcomeMap& f, const OutcomeMap& g) {
  std::vector<std::pair<Label, Label>> mapping;
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    for (std::size_t j = 0; j < g.source().size(); ++j) {
      mapping.emplace_back(Label::pair(f.source()[i], g.source()[j]),
                           Label::pair(f.target()[f.image_index(i)], g.target()[g.image_index(j)]));
    }
  }
  LabelList target;
  for (const auto& u : f.target())
    for (const auto& v : g.target()) target.push_back(Label::pair(u, v));
  return OutcomeMap(mapping, std::move(target));
}

Observable reduce_obs(const Observable& a, SplitDims dims, Subsystem keep, const Tolerance& tol) {
  if (dims.first * dims.second != a.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "observable dim " + std::to_string(a.dim()) +
                                                  " does not factor as " + std::to_string(dims.first) +
                                                  "*" + std::to_string(dims.second));
  }
  const Subsystem traced = keep == Subsystem::First ? Subsystem::Second : Subsystem::First;
  const double scale = 1.0 / static_cast<double>(keep == Subsystem::First ? dims.second : dims.first);
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t x = 0; x < a.size(); ++x) {
    outcomes.emplace_back(a.labels()[x], scale * partial_trace(a.effect(x), dims, traced));
  }
  return Observable(std::move(outcomes), tol);
}

Distribution joint_distribution_product(const CoexistenceWitness& w, const State& rho,
                                        const Tolerance& tol) {
  const Observable& c = w.joint();
  require_dim(c.dim(), rho.dim(), "joint_distribution_product");
  const auto fa = align_map(c, w.to_a());
  const auto fb = align_map(c, w.to_b());
  // Witness maps may order their targets differently from a/b.
  std::vector<std::size_t> to_a_index(w.to_a().target().size());
  std::vector<std::size_t> to_b_index(w.to_b().target().size());
  for (std::size_t i = 0; i < to_a_index.size(); ++i) to_a_index[i] = *w.a().index_of(w.to_a().target()[i]);
  for (std::size_t i = 0; i < to_b_index.size(); ++i) to_b_index[i] = *w.b().index_of(w.to_b().target()[i]);

  const std::size_t nb = w.b().size();
  std::vector<double> values(w.a().size() * nb, 0.0);
  for (std::size_t z = 0; z < c.size(); ++z) {
    const double p = (rho.matrix() * c.effect(z)).trace().real();
    values[to_a_index[fa[z]] * nb + to_b_index[fb[z]]] += p;
  }
  LabelList labels;
  for (const auto& x : w.a().labels())
    for (const auto& y : w.b().labels()) labels.push_back(Label::pair(x, y));
  return Distribution(std::move(labels), std::move(values), tol);
}

Observable tag_labels(const Observable& a, const Label& tag, const Tolerance& tol) {
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t i = 0; i < a.size(); ++i) outcomes.emplace_back(Label::pair(tag, a.labels()[i]), a.effect(i));
  return Observable(std::move(outcomes), tol);
}

double observable_distance(const Observable& a, const Observable& b) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.dim() != b.dim() || a.size() != b.size()) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto j = b.index_of(a.labels()[i]);
    if (!j) return kInf;
    worst = std::max(worst, (a.effect(i) - b.effect(*j)).norm());
  }
  return worst;
}

double distribution_distance(const Distribution& p, const Distribution& q) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (p.size() != q.size()) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& label = p.labels()[i];
    if (std::find(q.labels().begin(), q.labels().end(), label) == q.labels().end()) return kInf;
    worst = std::max(worst, std::abs(p.at(i) - q(label)));
  }
  return worst;
}

}  // namespace qop

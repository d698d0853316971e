#include "qop/instrument.hpp"

#include "qop/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_set>

namespace qop {

namespace {

std::size_t dim_of(const Matrix& m) { return static_cast<std::size_t>(m.rows()); }

Matrix zero_matrix(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Matrix::Zero(n, n);
}

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Fixed-seed probe states used to confirm constructed instruments act as
// intended. Independent of any caller RNG so constructors stay pure.
std::vector<Matrix> construction_probes(std::size_t dim, std::size_t count) {
  std::mt19937_64 rng(0x5eed0f1a5eULL + dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  std::vector<Matrix> probes;
  for (std::size_t k = 0; k < count; ++k) {
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    Matrix rho = g * g.adjoint();
    probes.push_back(rho / rho.trace().real());
  }
  return probes;
}

// Kraus operators sqrt(a_i b_j) |u_i><v_j| realizing rho -> tr(rho effect) state.
std::vector<Matrix> measure_and_prepare_kraus(const Matrix& effect, const Matrix& state,
                                              const Tolerance& tol) {
  const HermitianEig e = hermitian_eig(effect, tol);
  const HermitianEig s = hermitian_eig(state, tol);
  std::vector<Matrix> kraus;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (s.values(i) <= tol.eig_floor) continue;
    for (Eigen::Index j = 0; j < e.values.size(); ++j) {
      if (e.values(j) <= tol.eig_floor) continue;
      kraus.push_back(std::sqrt(s.values(i) * e.values(j)) * s.vectors.col(i) *
                      e.vectors.col(j).adjoint());
    }
  }
  if (kraus.empty()) kraus.push_back(zero_matrix(dim_of(effect)));
  return kraus;
}

void verify_measure_and_prepare(const Instrument& inst, const Observable& a,
                                std::span<const Matrix> states, const Tolerance& tol) {
  for (const Matrix& rho : construction_probes(inst.dim(), 5)) {
    for (std::size_t x = 0; x < a.size(); ++x) {
      const Matrix expected = (rho * a.effect(x)).trace().real() * states[x];
      const double err = (inst.operation(x)(rho) - expected).norm();
      if (err > 10.0 * tol.atol) {
        throw Error(ErrorCode::NumericalFailure,
                    "measure-and-prepare realization off by " + std::to_string(err));
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Operation::Operation(std::vector<Matrix> kraus, const Tolerance& tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorCode::InvalidInstrument, "operation needs a Kraus operator");
  dim_ = dim_of(kraus_.front());
  for (const auto& s : kraus_) {
    require_square(s);
    require_dim(dim_of(s), dim_, "Kraus operators");
  }
  const Matrix sum = kraus_sum();
  if (!loewner_leq(hermitize(sum), identity(dim_), tol)) {
    throw Error(ErrorCode::NotTraceNonIncreasing, "sum of S^dag S exceeds I");
  }
}

Operation Operation::from_choi(const Matrix& c, std::size_t dim, const Tolerance& tol) {
  require_square(c);
  require_dim(dim_of(c), dim * dim, "Choi matrix");
  if (!is_hermitian(c, tol)) throw Error(ErrorCode::NotCompletelyPositive, "Choi matrix not Hermitian");
  const HermitianEig eig = hermitian_eig(c, tol);
  if (eig.values(0) < -tol.eig_floor) {
    throw Error(ErrorCode::NotCompletelyPositive,
                "Choi eigenvalue " + std::to_string(eig.values(0)));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  std::vector<Matrix> kraus;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    if (eig.values(k) <= tol.eig_floor) break;
    // Column-major reshape: vec(S)[j*d + m] = S(m, j).
    const Eigen::VectorXcd v = std::sqrt(eig.values(k)) * eig.vectors.col(k);
    kraus.emplace_back(Eigen::Map<const Matrix>(v.data(), n, n));
  }
  if (kraus.empty()) kraus.push_back(zero_matrix(dim));
  return Operation(std::move(kraus), tol);
}

Operation Operation::zero(std::size_t dim) { return Operation({zero_matrix(dim)}); }

Matrix Operation::operator()(const Matrix& input) const {
  require_dim(dim_of(input), dim_, "operation input");
  Matrix out = zero_matrix(dim_);
  for (const auto& s : kraus_) out += s * input * s.adjoint();
  return out;
}

Matrix Operation::kraus_sum() const {
  Matrix sum = zero_matrix(dim_);
  for (const auto& s : kraus_) sum += s.adjoint() * s;
  return sum;
}

bool is_channel(const Operation& op, const Tolerance& tol) {
  return (op.kraus_sum() - identity(op.dim())).norm() <= tol.atol;
}

Matrix choi(const Operation& op) {
  const auto n2 = static_cast<Eigen::Index>(op.dim() * op.dim());
  Matrix c = Matrix::Zero(n2, n2);
  for (const auto& s : op.kraus()) {
    const Eigen::Map<const Eigen::VectorXcd> v(s.data(), n2);
    c += v * v.adjoint();
  }
  return c;
}

Operation compress(const Operation& op, const Tolerance& tol) {
  return Operation::from_choi(hermitize(choi(op)), op.dim(), tol);
}

PartialState apply(const Operation& op, const State& rho, const Tolerance& tol) {
  require_dim(op.dim(), rho.dim(), "apply");
  return PartialState(hermitize(op(rho.matrix())), tol);
}

// ---------------------------------------------------------------------------

Instrument::Instrument(std::vector<Outcome> outcomes, const Tolerance& tol) {
  if (outcomes.empty()) throw Error(ErrorCode::InvalidInstrument, "no outcomes");
  dim_ = outcomes.front().second.dim();
  Matrix total = zero_matrix(dim_);
  for (auto& [label, op] : outcomes) {
    require_dim(op.dim(), dim_, "instrument operations");
    total += op.kraus_sum();
    labels_.push_back(label);
    operations_.push_back(std::move(op));
  }
  require_distinct(labels_, "outcome space");
  const double err = (total - identity(dim_)).norm();
  if (err > tol.atol) {
    throw Error(ErrorCode::InvalidInstrument, "total operation is not a channel (off by " +
                                                  std::to_string(err) + ")");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
}

const Operation& Instrument::operation(const Label& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw Error(ErrorCode::UnknownLabel, label.text());
  return operations_[it->second];
}

std::optional<std::size_t> Instrument::index_of(const Label& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Operation Instrument::total() const {
  std::vector<Matrix> kraus;
  for (const auto& op : operations_) kraus.insert(kraus.end(), op.kraus().begin(), op.kraus().end());
  return Operation(std::move(kraus));
}

Distribution instrument_distribution(const Instrument& inst, const State& rho, const Tolerance& tol) {
  require_dim(inst.dim(), rho.dim(), "instrument_distribution");
  std::vector<double> values;
  for (std::size_t x = 0; x < inst.size(); ++x) {
    values.push_back(inst.operation(x)(rho.matrix()).trace().real());
  }
  return Distribution(inst.labels(), std::move(values), tol);
}

Observable measured_observable(const Instrument& inst, const Tolerance& tol) {
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t x = 0; x < inst.size(); ++x) {
    outcomes.emplace_back(inst.labels()[x], hermitize(inst.operation(x).kraus_sum()));
  }
  return Observable(std::move(outcomes), tol);
}

// ---------------------------------------------------------------------------

Instrument part_instrument(const Instrument& inst, const OutcomeMap& f, const Tolerance& tol) {
  if (!f.is_surjective()) throw Error(ErrorCode::NotSurjective, "part requires a surjection");
  if (f.source().size() != inst.size()) {
    throw Error(ErrorCode::LabelMismatch, "map source differs from outcome space");
  }
  std::vector<std::vector<Matrix>> kraus(f.target().size());
  for (std::size_t x = 0; x < inst.size(); ++x) {
    const Label& y = f(inst.labels()[x]);
    const auto target = std::find(f.target().begin(), f.target().end(), y) - f.target().begin();
    const auto& ks = inst.operation(x).kraus();
    kraus[static_cast<std::size_t>(target)].insert(kraus[static_cast<std::size_t>(target)].end(),
                                                   ks.begin(), ks.end());
  }
  std::vector<Instrument::Outcome> outcomes;
  for (std::size_t y = 0; y < kraus.size(); ++y) {
    outcomes.emplace_back(f.target()[y], Operation(std::move(kraus[y]), tol));
  }
  return Instrument(std::move(outcomes), tol);
}

Instrument post_process_instrument(const TransitionMatrix& mu, const Instrument& inst,
                                   const Tolerance& tol) {
  if (mu.rows().size() != inst.size()) {
    throw Error(ErrorCode::LabelMismatch, "transition rows differ from outcome space");
  }
  std::vector<std::size_t> rows(inst.size());
  for (std::size_t x = 0; x < inst.size(); ++x) {
    const auto r = mu.row_index(inst.labels()[x]);
    if (!r) throw Error(ErrorCode::LabelMismatch, inst.labels()[x].text() + " has no transition row");
    rows[x] = *r;
  }
  std::vector<Instrument::Outcome> outcomes;
  for (std::size_t y = 0; y < mu.cols().size(); ++y) {
    std::vector<Matrix> kraus;
    for (std::size_t x = 0; x < inst.size(); ++x) {
      const double w = mu(rows[x], y);
      if (w <= 0.0) continue;
      for (const auto& s : inst.operation(x).kraus()) kraus.push_back(std::sqrt(w) * s);
    }
    if (kraus.empty()) kraus.push_back(zero_matrix(inst.dim()));
    outcomes.emplace_back(mu.cols()[y], Operation(std::move(kraus), tol));
  }
  return Instrument(std::move(outcomes), tol);
}

Instrument gen_convex_instrument(std::span<const double> weights,
                                 std::span<const Instrument> instruments, const Tolerance& tol) {
  require_convex_weights(weights, instruments.size(), tol);
  const std::size_t dim = instruments.front().dim();
  std::vector<LabelList> spaces;
  for (const auto& inst : instruments) {
    require_dim(inst.dim(), dim, "gen_convex_instrument");
    spaces.push_back(inst.labels());
  }
  std::vector<Instrument::Outcome> outcomes;
  for (const auto& x : ordered_union(spaces)) {
    std::vector<Matrix> kraus;
    for (std::size_t i = 0; i < instruments.size(); ++i) {
      const auto idx = instruments[i].index_of(x);
      if (!idx) continue;
      for (const auto& s : instruments[i].operation(*idx).kraus()) kraus.push_back(std::sqrt(weights[i]) * s);
    }
    outcomes.emplace_back(x, Operation(std::move(kraus), tol));
  }
  return Instrument(std::move(outcomes), tol);
}

Instrument seq_instrument(const Instrument& first, const Instrument& second, const Tolerance& tol) {
  require_dim(first.dim(), second.dim(), "seq_instrument");
  std::vector<Instrument::Outcome> outcomes;
  for (std::size_t x = 0; x < first.size(); ++x) {
    for (std::size_t y = 0; y < second.size(); ++y) {
      std::vector<Matrix> kraus;
      for (const auto& s : first.operation(x).kraus())
        for (const auto& t : second.operation(y).kraus()) kraus.push_back(t * s);
      outcomes.emplace_back(Label::pair(first.labels()[x], second.labels()[y]),
                            Operation(std::move(kraus), tol));
    }
  }
  return Instrument(std::move(outcomes), tol);
}

Instrument conditional_instrument(const Instrument& second, const Instrument& first,
                                  const Tolerance& tol) {
  require_dim(first.dim(), second.dim(), "conditional_instrument");
  const Operation channel = first.total();
  std::vector<Instrument::Outcome> outcomes;
  for (std::size_t y = 0; y < second.size(); ++y) {
    std::vector<Matrix> kraus;
    for (const auto& s : channel.kraus())
      for (const auto& t : second.operation(y).kraus()) kraus.push_back(t * s);
    outcomes.emplace_back(second.labels()[y], Operation(std::move(kraus), tol));
  }
  return Instrument(std::move(outcomes), tol);
}

// ---------------------------------------------------------------------------

Instrument make_kraus(const std::vector<std::pair<Label, Matrix>>& operators, const Tolerance& tol) {
  if (operators.empty()) throw Error(ErrorCode::InvalidInstrument, "no outcomes");
  const std::size_t dim = dim_of(operators.front().second);
  Matrix total = zero_matrix(dim);
  for (const auto& [label, s] : operators) {
    require_square(s);
    require_dim(dim_of(s), dim, "make_kraus");
    total += s.adjoint() * s;
  }
  const double err = (total - identity(dim)).norm();
  if (err > tol.atol) {
    throw Error(ErrorCode::NotNormalized, "sum S^dag S differs from I by " + std::to_string(err));
  }
  std::vector<Instrument::Outcome> outcomes;
  for (const auto& [label, s] : operators) outcomes.emplace_back(label, Operation({s}, tol));
  return Instrument(std::move(outcomes), tol);
}

Instrument make_luders(const Observable& a, const Tolerance& tol) {
  std::vector<Instrument::Outcome> outcomes;
  for (std::size_t x = 0; x < a.size(); ++x) {
    outcomes.emplace_back(a.labels()[x], Operation({psd_sqrt(a.effect(x), tol)}, tol));
  }
  return Instrument(std::move(outcomes), tol);
}

Instrument make_semitrivial(const Observable& a, std::span<const State> alpha, const Tolerance& tol) {
  if (alpha.size() != a.size()) throw Error(ErrorCode::LabelMismatch, "need one state per outcome");
  std::vector<Matrix> states;
  std::vector<Instrument::Outcome> outcomes;
  for (std::size_t x = 0; x < a.size(); ++x) {
    require_dim(alpha[x].dim(), a.dim(), "make_semitrivial");
    states.push_back(alpha[x].matrix());
    outcomes.emplace_back(a.labels()[x],
                          Operation(measure_and_prepare_kraus(a.effect(x), alpha[x].matrix(), tol), tol));
  }
  Instrument inst(std::move(outcomes), tol);
  verify_measure_and_prepare(inst, a, states, tol);
  return inst;
}

Instrument make_trivial(const Observable& a, const State& alpha, const Tolerance& tol) {
  const std::vector<State> states(a.size(), alpha);
  return make_semitrivial(a, states, tol);
}

// ---------------------------------------------------------------------------

std::string_view to_string(InstrumentType type) {
  switch (type) {
    case InstrumentType::Kraus: return "Kraus";
    case InstrumentType::Lueders: return "Lueders";
    case InstrumentType::Trivial: return "Trivial";
    case InstrumentType::Semitrivial: return "Semitrivial";
    case InstrumentType::General: return "General";
  }
  return "General";
}

InstrumentKind classify(const Instrument& inst, const Tolerance& tol) {
  InstrumentKind kind;
  kind.observable = measured_observable(inst, tol);
  const Observable& hat = *kind.observable;
  const std::size_t d = inst.dim();
  const SplitDims split{d, d};

  std::optional<Matrix> reference_state;
  double spread = 0.0;
  for (std::size_t x = 0; x < inst.size(); ++x) {
    const Matrix c = hermitize(choi(inst.operation(x)));
    const RealVector spectrum = hermitian_eigenvalues(c, tol);
    const double beyond_top =
        spectrum.head(spectrum.size() - 1).cwiseAbs().sum();
    kind.kraus_deviation = std::max(kind.kraus_deviation, beyond_top);

    const Matrix root = psd_sqrt(hat.effect(x), tol);
    const Eigen::Map<const Eigen::VectorXcd> v(root.data(), static_cast<Eigen::Index>(d * d));
    kind.lueders_deviation = std::max(kind.lueders_deviation, (c - v * v.adjoint()).norm());

    const double weight = hat.effect(x).trace().real();
    if (weight <= tol.atol) {
      kind.states.emplace_back();
      kind.semitrivial_deviation = std::max(kind.semitrivial_deviation, c.norm());
      continue;
    }
    Matrix state = partial_trace(c, split, Subsystem::First) / weight;
    const Matrix product = kron(hat.effect(x).transpose(), state);
    kind.semitrivial_deviation = std::max(kind.semitrivial_deviation, (c - product).norm());
    if (!reference_state) {
      reference_state = state;
    } else {
      spread = std::max(spread, (state - *reference_state).norm());
    }
    kind.states.push_back(std::move(state));
  }
  kind.trivial_deviation = std::max(kind.semitrivial_deviation, spread);

  kind.kraus = kind.kraus_deviation <= tol.atol;
  kind.lueders = kind.lueders_deviation <= tol.atol;
  kind.semitrivial = kind.semitrivial_deviation <= tol.atol;
  kind.trivial = kind.trivial_deviation <= tol.atol;
  if (kind.lueders) {
    kind.type = InstrumentType::Lueders;
  } else if (kind.kraus) {
    kind.type = InstrumentType::Kraus;
  } else if (kind.trivial) {
    kind.type = InstrumentType::Trivial;
  } else if (kind.semitrivial) {
    kind.type = InstrumentType::Semitrivial;
  }
  return kind;
}

bool commutes(const Observable& a, const Observable& b, const Tolerance& tol) {
  require_dim(a.dim(), b.dim(), "commutes");
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      worst = std::max(worst, (a.effect(x) * b.effect(y) - b.effect(y) * a.effect(x)).norm());
    }
  }
  return worst <= tol.atol;
}

double instrument_choi_distance(const Instrument& a, const Instrument& b) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.dim() != b.dim() || a.size() != b.size()) return kInf;
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const auto y = b.index_of(a.labels()[x]);
    if (!y) return kInf;
    worst = std::max(worst, (choi(a.operation(x)) - choi(b.operation(*y))).norm());
  }
  return worst;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  return 0.5 * trace_norm(hermitize(a - b));
}

double instrument_output_distance(const Instrument& a, const Instrument& b,
                                  std::span<const State> probes) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.dim() != b.dim() || a.size() != b.size()) return kInf;
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const auto y = b.index_of(a.labels()[x]);
    if (!y) return kInf;
    for (const auto& rho : probes) {
      worst = std::max(worst, trace_distance(a.operation(x)(rho.matrix()), b.operation(*y)(rho.matrix())));
    }
  }
  return worst;
}

}  // namespace qop

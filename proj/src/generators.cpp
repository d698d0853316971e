#include "qop/error.hpp"
#include "qop/harness.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qop {

namespace {

constexpr int kMaxRetries = 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void GeneratorConfig::validate() const {
  if (dim == 0 || outcome_count == 0 || kraus_per_outcome == 0) {
    throw Error(ErrorCode::BadSizes, "dim, outcome_count and kraus_per_outcome must be positive");
  }
  // Tensor checks pair the system with a qubit; Choi matrices need dim^2.
  if (2 * dim > max_dim() || dim * dim > max_dim()) {
    throw Error(ErrorCode::DimensionOverflow,
                "dim " + std::to_string(dim) + " exceeds limit " + std::to_string(max_dim()));
  }
}

LabelList numbered_labels(std::size_t count, std::string_view prefix) {
  LabelList out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(std::string(prefix) + std::to_string(i));
  return out;
}

Generator::Generator(std::uint64_t seed) : rng_(splitmix64(seed)) {}

std::size_t Generator::index(std::size_t bound) {
  if (bound == 0) throw Error(ErrorCode::BadSizes, "empty index range");
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
}

double Generator::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

Matrix Generator::gaussian(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = normal_(rng_);
      const double im = normal_(rng_);
      g(i, j) = Complex(re, im);
    }
  return g;
}

Matrix Generator::unitary(std::size_t dim) {
  const Matrix g = gaussian(dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

State Generator::state(std::size_t dim) {
  const Matrix g = gaussian(dim);
  Matrix rho = hermitize(g * g.adjoint());
  rho /= rho.trace().real();
  return State(std::move(rho));
}

std::vector<State> Generator::states(std::size_t dim, std::size_t count) {
  std::vector<State> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(state(dim));
  return out;
}

Matrix Generator::inverse_sqrt_or_retry(const Matrix& s, bool& ok) {
  const HermitianEig eig = hermitian_eig(hermitize(s));
  const Tolerance tol;
  ok = eig.values(0) >= tol.eig_floor;
  if (!ok) return {};
  const RealVector inv = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Observable Generator::observable(std::size_t dim, const LabelList& labels) {
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<Matrix> parts;
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix total = Matrix::Zero(n, n);
    for (std::size_t x = 0; x < labels.size(); ++x) {
      const Matrix k = gaussian(dim);
      parts.push_back(k * k.adjoint());
      total += parts.back();
    }
    bool ok = false;
    const Matrix norm = inverse_sqrt_or_retry(total, ok);
    if (!ok) continue;
    std::vector<Observable::Outcome> outcomes;
    for (std::size_t x = 0; x < labels.size(); ++x) {
      outcomes.emplace_back(labels[x], hermitize(norm * parts[x] * norm));
    }
    return Observable(std::move(outcomes));
  }
  throw Error(ErrorCode::SingularNormalizer, "could not draw a well-conditioned observable");
}

Observable Generator::diagonal_observable(const Matrix& basis, const LabelList& labels) {
  const auto n = basis.rows();
  std::vector<RealVector> diag(labels.size(), RealVector::Zero(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::vector<double> w = weights(labels.size());
    for (std::size_t x = 0; x < labels.size(); ++x) diag[x](i) = w[x];
  }
  std::vector<Observable::Outcome> outcomes;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    outcomes.emplace_back(labels[x], hermitize(basis * diag[x].cast<Complex>().asDiagonal() * basis.adjoint()));
  }
  return Observable(std::move(outcomes));
}

Instrument Generator::instrument(std::size_t dim, const LabelList& labels, std::size_t kraus_per_outcome) {
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<std::vector<Matrix>> raw(labels.size());
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix total = Matrix::Zero(n, n);
    for (auto& list : raw) {
      for (std::size_t i = 0; i < kraus_per_outcome; ++i) {
        list.push_back(gaussian(dim));
        total += list.back().adjoint() * list.back();
      }
    }
    bool ok = false;
    const Matrix norm = inverse_sqrt_or_retry(total, ok);
    if (!ok) continue;
    std::vector<Instrument::Outcome> outcomes;
    for (std::size_t x = 0; x < labels.size(); ++x) {
      std::vector<Matrix> kraus;
      for (const auto& k : raw[x]) kraus.push_back(k * norm);
      outcomes.emplace_back(labels[x], Operation(std::move(kraus)));
    }
    return Instrument(std::move(outcomes));
  }
  throw Error(ErrorCode::SingularNormalizer, "could not draw a well-conditioned instrument");
}

OutcomeMap Generator::surjection(const LabelList& source, std::size_t target_size,
                                 std::string_view target_prefix) {
  if (target_size == 0 || target_size > source.size()) {
    throw Error(ErrorCode::BadSizes, "need 1 <= target size <= source size");
  }
  const LabelList target = numbered_labels(target_size, target_prefix);
  std::vector<std::size_t> order(source.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng_);
  std::vector<std::size_t> cover(target_size);
  std::iota(cover.begin(), cover.end(), 0);
  std::shuffle(cover.begin(), cover.end(), rng_);

  std::vector<std::size_t> image(source.size());
  for (std::size_t k = 0; k < source.size(); ++k) {
    image[order[k]] = k < target_size ? cover[k] : index(target_size);
  }
  std::vector<std::pair<Label, Label>> mapping;
  for (std::size_t i = 0; i < source.size(); ++i) mapping.emplace_back(source[i], target[image[i]]);
  return OutcomeMap(mapping, target);
}

TransitionMatrix Generator::transition(const LabelList& rows, const LabelList& cols) {
  Eigen::MatrixXd entries(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index r = 0; r < entries.rows(); ++r) {
    const std::vector<double> w = weights(cols.size());
    for (Eigen::Index c = 0; c < entries.cols(); ++c) entries(r, c) = w[static_cast<std::size_t>(c)];
  }
  return TransitionMatrix(rows, cols, std::move(entries));
}

std::vector<double> Generator::weights(std::size_t count) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(count);
  double sum = 0.0;
  for (auto& v : w) {
    do {
      v = expo(rng_);
    } while (!(v > 1e-12));
    sum += v;
  }
  for (auto& v : w) v /= sum;
  return w;
}

State gen_state(const GeneratorConfig& cfg) {
  cfg.validate();
  return Generator(cfg.seed).state(cfg.dim);
}

Observable gen_observable(const GeneratorConfig& cfg) {
  cfg.validate();
  return Generator(cfg.seed).observable(cfg.dim, numbered_labels(cfg.outcome_count, "x"));
}

Instrument gen_instrument(const GeneratorConfig& cfg) {
  cfg.validate();
  return Generator(cfg.seed).instrument(cfg.dim, numbered_labels(cfg.outcome_count, "x"),
                                        cfg.kraus_per_outcome);
}

OutcomeMap gen_surjection(const GeneratorConfig& cfg, std::size_t source_size, std::size_t target_size) {
  return Generator(cfg.seed).surjection(numbered_labels(source_size, "x"), target_size);
}

TransitionMatrix gen_transition(const GeneratorConfig& cfg, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::BadSizes, "transition needs rows and columns");
  return Generator(cfg.seed).transition(numbered_labels(rows, "x"), numbered_labels(cols, "y"));
}

}  // namespace qop

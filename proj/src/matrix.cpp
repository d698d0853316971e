#include "qop/matrix.hpp"

#include "qop/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdlib>
#include <string>

namespace qop {

void Tolerance::validate() const {
  if (!(atol > 0.0) || !std::isfinite(atol)) {
    throw Error(ErrorCode::BadSizes, "atol must be positive, got " + std::to_string(atol));
  }
  if (!(eig_floor >= 0.0) || !std::isfinite(eig_floor)) {
    throw Error(ErrorCode::BadSizes, "eig_floor must be nonnegative");
  }
}

std::size_t max_dim() {
  constexpr std::size_t kDefault = 64;
  const char* env = std::getenv("QOP_MAX_DIM");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) return kDefault;
  return static_cast<std::size_t>(value);
}

Matrix identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Matrix::Identity(n, n);
}

void require_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::NotSquare, "expected a nonempty square matrix, got " +
                                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
  }
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  return (a - b).norm();
}

bool is_hermitian(const Matrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol.atol;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

namespace {

void require_hermitian(const Matrix& m, const Tolerance& tol) {
  require_square(m);
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::NotHermitian,
                "||M - M^dag||_F = " + std::to_string((m - m.adjoint()).norm()));
  }
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& m, const Tolerance& tol) {
  require_hermitian(m, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& m, const Tolerance& tol) {
  require_hermitian(m, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& m, const Tolerance& tol) {
  return hermitian_eigenvalues(m, tol)(0);
}

Matrix psd_sqrt(const Matrix& m, const Tolerance& tol) {
  const HermitianEig eig = hermitian_eig(m, tol);
  if (eig.values(0) < -tol.eig_floor) {
    throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(eig.values(0)));
  }
  RealVector roots = eig.values;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    roots(i) = roots(i) < tol.eig_floor ? 0.0 : std::sqrt(roots(i));
  }
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double trace_norm(const Matrix& m, const Tolerance& tol) {
  return hermitian_eigenvalues(m, tol).cwiseAbs().sum();
}

Matrix kron(const Matrix& m, const Matrix& n) {
  require_square(m);
  require_square(n);
  const auto dm = static_cast<std::size_t>(m.rows());
  const auto dn = static_cast<std::size_t>(n.rows());
  if (dm * dn > max_dim()) {
    throw Error(ErrorCode::DimensionOverflow, std::to_string(dm) + "*" + std::to_string(dn) +
                                                  " exceeds limit " + std::to_string(max_dim()));
  }
  const Eigen::Index dni = n.rows();
  Matrix out(m.rows() * dni, m.cols() * dni);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.block(i * dni, j * dni, dni, dni) = m(i, j) * n;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, SplitDims dims, Subsystem traced) {
  require_square(m);
  const auto n1 = static_cast<Eigen::Index>(dims.first);
  const auto n2 = static_cast<Eigen::Index>(dims.second);
  if (n1 == 0 || n2 == 0 || m.rows() != n1 * n2) {
    throw Error(ErrorCode::DimensionMismatch, "dim " + std::to_string(m.rows()) + " != " +
                                                  std::to_string(n1) + "*" + std::to_string(n2));
  }
  if (traced == Subsystem::Second) {
    Matrix out = Matrix::Zero(n1, n1);
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n1; ++j)
        for (Eigen::Index k = 0; k < n2; ++k) out(i, j) += m(i * n2 + k, j * n2 + k);
    return out;
  }
  Matrix out = Matrix::Zero(n2, n2);
  for (Eigen::Index k = 0; k < n2; ++k)
    for (Eigen::Index l = 0; l < n2; ++l)
      for (Eigen::Index i = 0; i < n1; ++i) out(k, l) += m(i * n2 + k, i * n2 + l);
  return out;
}

bool loewner_leq(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  require_square(a);
  require_same_dim(a, b);
  if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) {
    throw Error(ErrorCode::NotHermitian, "loewner_leq requires Hermitian arguments");
  }
  return min_eigenvalue(b - a, tol) >= -tol.eig_floor;
}

}  // namespace qop

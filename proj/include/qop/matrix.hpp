#pragma once

// Dense complex matrices and the spectral helpers every operator in the
// library is built on. Tolerances are explicit: validators compare against a
// Tolerance and never repair their input.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace qop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct Tolerance {
  /// Absolute tolerance on Frobenius-norm distances.
  double atol = 1e-9;
  /// Eigenvalues in [-eig_floor, eig_floor) are treated as zero.
  double eig_floor = 1e-10;

  void validate() const;
};

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns are eigenvectors
};

/// Largest total Hilbert-space dimension accepted by kron and tensor
/// constructions. Reads QOP_MAX_DIM, defaults to 64.
std::size_t max_dim();

Matrix identity(std::size_t dim);

/// Throws NotSquare / NonFinite when M is not a finite square matrix.
void require_square(const Matrix& m);
void require_same_dim(const Matrix& a, const Matrix& b);

double frobenius_distance(const Matrix& a, const Matrix& b);
bool is_hermitian(const Matrix& m, const Tolerance& tol = {});
Matrix hermitize(const Matrix& m);

HermitianEig hermitian_eig(const Matrix& m, const Tolerance& tol = {});
RealVector hermitian_eigenvalues(const Matrix& m, const Tolerance& tol = {});
double min_eigenvalue(const Matrix& m, const Tolerance& tol = {});

/// Positive square root; eigenvalues below eig_floor are clipped to zero.
Matrix psd_sqrt(const Matrix& m, const Tolerance& tol = {});

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix& m, const Tolerance& tol = {});

/// Kronecker product, entry (i*dn + k, j*dn + l) = m(i,j) * n(k,l).
Matrix kron(const Matrix& m, const Matrix& n);

struct SplitDims {
  std::size_t first;
  std::size_t second;
};

enum class Subsystem { First = 1, Second = 2 };

/// Traces out `traced` from M acting on C^first (x) C^second.
Matrix partial_trace(const Matrix& m, SplitDims dims, Subsystem traced);

/// a <= b in the Loewner order: min eigenvalue of (b - a) >= -eig_floor.
bool loewner_leq(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

}  // namespace qop

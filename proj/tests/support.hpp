#pragma once

#include "qop/error.hpp"
#include "qop/harness.hpp"

#include <doctest.h>

#include <optional>

namespace qop::test {

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix p0() { return mat2(1, 0, 0, 0); }
inline Matrix p1() { return mat2(0, 0, 0, 1); }
inline Matrix plus() { return mat2(0.5, 0.5, 0.5, 0.5); }
inline Matrix minus() { return mat2(0.5, -0.5, -0.5, 0.5); }

inline Observable z_basis() { return Observable({{"0", p0()}, {"1", p1()}}); }
inline Observable x_basis() { return Observable({{"+", plus()}, {"-", minus()}}); }

inline Matrix diag(std::initializer_list<double> entries) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v(i++) = e;
  return v.cast<Complex>().asDiagonal();
}

/// Error code thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<ErrorCode> thrown(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define CHECK_CODE(expr, expected)                                              \
  do {                                                                          \
    const auto qop_code_ = ::qop::test::thrown([&] { (void)(expr); });          \
    CHECK_MESSAGE(qop_code_.has_value(), "expected " << #expected);             \
    if (qop_code_) CHECK(std::string(::qop::to_string(*qop_code_)) == std::string(::qop::to_string(expected))); \
  } while (0)

}  // namespace qop::test

#pragma once

#include <array>
#include <cmath>

namespace socr {

using Vec3 = std::array<double, 3>;
using Vec6 = std::array<double, 6>;
// Row-major general 3x3 matrix.
using Mat3 = std::array<std::array<double, 3>, 3>;

inline constexpr double kSqrt2 = 1.41421356237309504880;

/// Real symmetric 3x3 matrix with the six independent entries stored once.
struct SymMat3 {
  double a11 = 0, a22 = 0, a33 = 0;
  double a12 = 0, a13 = 0, a23 = 0;

  static constexpr SymMat3 diag(double d1, double d2, double d3) {
    return {d1, d2, d3, 0, 0, 0};
  }
  static constexpr SymMat3 identity() { return diag(1, 1, 1); }

  /// Accepts a full array if max |m_ij - m_ji| <= sym_tol. A negative
  /// sym_tol selects the default 1e-12 * max |m_ij|. Throws kInvalidInput.
  static SymMat3 from_full(const Mat3& m, double sym_tol = -1.0);

  /// Outer product v v^T.
  static SymMat3 outer(const Vec3& v);

  double operator()(int i, int j) const;
  Mat3 full() const;

  double trace() const { return a11 + a22 + a33; }
  double det() const;
  /// Sum of the three 2x2 principal minors.
  double principal_minor_sum() const;
  double norm() const;  // Frobenius
  double max_abs() const;

  SymMat3& operator+=(const SymMat3& o);
  SymMat3& operator-=(const SymMat3& o);
  SymMat3& operator*=(double s);
};

SymMat3 operator+(SymMat3 a, const SymMat3& b);
SymMat3 operator-(SymMat3 a, const SymMat3& b);
SymMat3 operator-(SymMat3 a);
SymMat3 operator*(double s, SymMat3 a);
SymMat3 operator*(SymMat3 a, double s);

/// svec coordinates (a11, a22, a33, sqrt2 a12, sqrt2 a13, sqrt2 a23):
/// the trace inner product becomes the Euclidean dot product.
Vec6 svec(const SymMat3& a);
SymMat3 smat(const Vec6& v);

/// tr(AB)
double trace_inner(const SymMat3& a, const SymMat3& b);

double dot(const Vec6& a, const Vec6& b);
double norm(const Vec6& a);
double dot(const Vec3& a, const Vec3& b);

Mat3 mat3_identity();
Mat3 matmul(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& a);
double det(const Mat3& a);
/// Throws kNumericalFailure when |det| is below 1e-300.
Mat3 inverse(const Mat3& a);
Vec3 matvec(const Mat3& a, const Vec3& v);

/// N A N^T, symmetrized.
SymMat3 congruence(const Mat3& n, const SymMat3& a);

}  // namespace socr

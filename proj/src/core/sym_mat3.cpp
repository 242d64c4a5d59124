#include "socr/sym_mat3.hpp"

#include <algorithm>
#include <sstream>

#include "socr/errors.hpp"

namespace socr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kZeroMatrix: return "ZeroMatrix";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kSamplingExhausted: return "SamplingExhausted";
    case ErrorCode::kNotInSlice: return "NotInSlice";
    case ErrorCode::kEmptyInterval: return "EmptyInterval";
    case ErrorCode::kNotSingularIndefinite: return "NotSingularIndefinite";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kIndefinitenessLost: return "IndefinitenessLost";
    case ErrorCode::kRankTooLarge: return "RankTooLarge";
    case ErrorCode::kNotSocr: return "NotSocr";
  }
  return "Unknown";
}

SymMat3 SymMat3::from_full(const Mat3& m, double sym_tol) {
  double max_entry = 0.0;
  for (const auto& row : m)
    for (double x : row) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidInput, "non-finite matrix entry");
      max_entry = std::max(max_entry, std::abs(x));
    }
  if (sym_tol < 0) sym_tol = 1e-12 * max_entry;
  double asym = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) asym = std::max(asym, std::abs(m[i][j] - m[j][i]));
  if (asym > sym_tol) {
    std::ostringstream os;
    os << "matrix is not symmetric (max asymmetry " << asym << " > " << sym_tol << ")";
    throw Error(ErrorCode::kInvalidInput, os.str());
  }
  return {m[0][0], m[1][1], m[2][2], 0.5 * (m[0][1] + m[1][0]), 0.5 * (m[0][2] + m[2][0]),
          0.5 * (m[1][2] + m[2][1])};
}

SymMat3 SymMat3::outer(const Vec3& v) {
  return {v[0] * v[0], v[1] * v[1], v[2] * v[2], v[0] * v[1], v[0] * v[2], v[1] * v[2]};
}

double SymMat3::operator()(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return i == 0 ? a11 : (i == 1 ? a22 : a33);
  if (i == 0) return j == 1 ? a12 : a13;
  return a23;
}

Mat3 SymMat3::full() const {
  return {{{a11, a12, a13}, {a12, a22, a23}, {a13, a23, a33}}};
}

double SymMat3::det() const {
  return a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
         a13 * (a12 * a23 - a22 * a13);
}

double SymMat3::principal_minor_sum() const {
  return (a11 * a22 - a12 * a12) + (a11 * a33 - a13 * a13) + (a22 * a33 - a23 * a23);
}

double SymMat3::norm() const {
  return std::sqrt(a11 * a11 + a22 * a22 + a33 * a33 +
                   2.0 * (a12 * a12 + a13 * a13 + a23 * a23));
}

double SymMat3::max_abs() const {
  return std::max({std::abs(a11), std::abs(a22), std::abs(a33), std::abs(a12), std::abs(a13),
                   std::abs(a23)});
}

SymMat3& SymMat3::operator+=(const SymMat3& o) {
  a11 += o.a11; a22 += o.a22; a33 += o.a33;
  a12 += o.a12; a13 += o.a13; a23 += o.a23;
  return *this;
}

SymMat3& SymMat3::operator-=(const SymMat3& o) {
  a11 -= o.a11; a22 -= o.a22; a33 -= o.a33;
  a12 -= o.a12; a13 -= o.a13; a23 -= o.a23;
  return *this;
}

SymMat3& SymMat3::operator*=(double s) {
  a11 *= s; a22 *= s; a33 *= s;
  a12 *= s; a13 *= s; a23 *= s;
  return *this;
}

SymMat3 operator+(SymMat3 a, const SymMat3& b) { return a += b; }
SymMat3 operator-(SymMat3 a, const SymMat3& b) { return a -= b; }
SymMat3 operator-(SymMat3 a) { return a *= -1.0; }
SymMat3 operator*(double s, SymMat3 a) { return a *= s; }
SymMat3 operator*(SymMat3 a, double s) { return a *= s; }

Vec6 svec(const SymMat3& a) {
  return {a.a11, a.a22, a.a33, kSqrt2 * a.a12, kSqrt2 * a.a13, kSqrt2 * a.a23};
}

SymMat3 smat(const Vec6& v) {
  constexpr double r = 1.0 / kSqrt2;
  return {v[0], v[1], v[2], r * v[3], r * v[4], r * v[5]};
}

double trace_inner(const SymMat3& a, const SymMat3& b) {
  return a.a11 * b.a11 + a.a22 * b.a22 + a.a33 * b.a33 +
         2.0 * (a.a12 * b.a12 + a.a13 * b.a13 + a.a23 * b.a23);
}

double dot(const Vec6& a, const Vec6& b) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec6& a) { return std::sqrt(dot(a, a)); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Mat3 mat3_identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return c;
}

Mat3 transpose(const Mat3& a) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

double det(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 inverse(const Mat3& a) {
  const double d = det(a);
  if (std::abs(d) < 1e-300) throw Error(ErrorCode::kNumericalFailure, "singular 3x3 matrix");
  Mat3 inv{};
  inv[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
  inv[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
  inv[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
  inv[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
  inv[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
  inv[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
  inv[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
  inv[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
  inv[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
  return inv;
}

Vec3 matvec(const Mat3& a, const Vec3& v) {
  return {a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
          a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
          a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2]};
}

SymMat3 congruence(const Mat3& n, const SymMat3& a) {
  const Mat3 p = matmul(matmul(n, a.full()), transpose(n));
  return {p[0][0], p[1][1], p[2][2], 0.5 * (p[0][1] + p[1][0]), 0.5 * (p[0][2] + p[2][0]),
          0.5 * (p[1][2] + p[2][1])};
}

}  // namespace socr

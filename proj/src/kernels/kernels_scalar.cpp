#include <cmath>

#include "socr/kernels.hpp"

namespace socr::kernels::scalar {

void affine_map(int rows, int cols, const double* m, const double* offset, const double* in,
                double* out, std::size_t n) {
  for (int r = 0; r < rows; ++r) {
    double* o = out + r * n;
    const double b = offset ? offset[r] : 0.0;
    for (std::size_t j = 0; j < n; ++j) o[j] = b;
    for (int c = 0; c < cols; ++c) {
      const double w = m[r * cols + c];
      const double* x = in + c * n;
      for (std::size_t j = 0; j < n; ++j) o[j] += w * x[j];
    }
  }
}

void q2_margin(const double* z, double* out, std::size_t n) {
  const double *w1 = z, *w2 = z + n, *w3 = z + 2 * n;
  const double *v1 = z + 3 * n, *v2 = z + 4 * n, *v3 = z + 5 * n;
  for (std::size_t j = 0; j < n; ++j) {
    const double mw = w3[j] - std::sqrt(w1[j] * w1[j] + w2[j] * w2[j]);
    const double mv = v3[j] - std::sqrt(v1[j] * v1[j] + v2[j] * v2[j]);
    out[j] = mw < mv ? mw : mv;
  }
}

void complement_norm(int rows, const double* q, const double* x, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (int r = 0; r < rows; ++r) {
    const double* qr = q + 6 * r;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < 6; ++i) s += qr[i] * x[i * n + j];
      out[j] += s * s;
    }
  }
  for (std::size_t j = 0; j < n; ++j) out[j] = std::sqrt(out[j]);
}

void det_minor_sum(const double* x, double* det, double* minor_sum, std::size_t n) {
  constexpr double r = 0.70710678118654752440;
  for (std::size_t j = 0; j < n; ++j) {
    const double a11 = x[j], a22 = x[n + j], a33 = x[2 * n + j];
    const double a12 = r * x[3 * n + j], a13 = r * x[4 * n + j], a23 = r * x[5 * n + j];
    const double m12 = a11 * a22 - a12 * a12;
    const double m13 = a11 * a33 - a13 * a13;
    const double m23 = a22 * a33 - a23 * a23;
    det[j] = a11 * m23 - a12 * (a12 * a33 - a23 * a13) + a13 * (a12 * a23 - a22 * a13);
    minor_sum[j] = m12 + m13 + m23;
  }
}

}  // namespace socr::kernels::scalar

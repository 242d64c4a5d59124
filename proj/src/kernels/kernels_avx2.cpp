#include <immintrin.h>

#include <cmath>

#include "socr/kernels.hpp"

namespace socr::kernels::avx2 {

void affine_map(int rows, int cols, const double* m, const double* offset, const double* in,
                double* out, std::size_t n) {
  const std::size_t vec_end = n & ~std::size_t{3};
  for (int r = 0; r < rows; ++r) {
    double* o = out + r * n;
    const double b = offset ? offset[r] : 0.0;
    const double* mr = m + r * cols;
    std::size_t j = 0;
    for (; j < vec_end; j += 4) {
      __m256d acc = _mm256_set1_pd(b);
      for (int c = 0; c < cols; ++c)
        acc = _mm256_fmadd_pd(_mm256_set1_pd(mr[c]), _mm256_loadu_pd(in + c * n + j), acc);
      _mm256_storeu_pd(o + j, acc);
    }
    for (; j < n; ++j) {
      double acc = b;
      for (int c = 0; c < cols; ++c) acc = std::fma(mr[c], in[c * n + j], acc);
      o[j] = acc;
    }
  }
}

void q2_margin(const double* z, double* out, std::size_t n) {
  const double *w1 = z, *w2 = z + n, *w3 = z + 2 * n;
  const double *v1 = z + 3 * n, *v2 = z + 4 * n, *v3 = z + 5 * n;
  const std::size_t vec_end = n & ~std::size_t{3};
  std::size_t j = 0;
  for (; j < vec_end; j += 4) {
    const __m256d a1 = _mm256_loadu_pd(w1 + j), a2 = _mm256_loadu_pd(w2 + j);
    const __m256d b1 = _mm256_loadu_pd(v1 + j), b2 = _mm256_loadu_pd(v2 + j);
    const __m256d rw = _mm256_sqrt_pd(_mm256_fmadd_pd(a1, a1, _mm256_mul_pd(a2, a2)));
    const __m256d rv = _mm256_sqrt_pd(_mm256_fmadd_pd(b1, b1, _mm256_mul_pd(b2, b2)));
    const __m256d mw = _mm256_sub_pd(_mm256_loadu_pd(w3 + j), rw);
    const __m256d mv = _mm256_sub_pd(_mm256_loadu_pd(v3 + j), rv);
    _mm256_storeu_pd(out + j, _mm256_min_pd(mw, mv));
  }
  for (; j < n; ++j) {
    const double mw = w3[j] - std::sqrt(std::fma(w1[j], w1[j], w2[j] * w2[j]));
    const double mv = v3[j] - std::sqrt(std::fma(v1[j], v1[j], v2[j] * v2[j]));
    out[j] = mw < mv ? mw : mv;
  }
}

void complement_norm(int rows, const double* q, const double* x, double* out, std::size_t n) {
  const std::size_t vec_end = n & ~std::size_t{3};
  std::size_t j = 0;
  for (; j < vec_end; j += 4) {
    __m256d x_i[6];
    for (int i = 0; i < 6; ++i) x_i[i] = _mm256_loadu_pd(x + i * n + j);
    __m256d acc = _mm256_setzero_pd();
    for (int r = 0; r < rows; ++r) {
      const double* qr = q + 6 * r;
      __m256d s = _mm256_mul_pd(_mm256_set1_pd(qr[0]), x_i[0]);
      for (int i = 1; i < 6; ++i) s = _mm256_fmadd_pd(_mm256_set1_pd(qr[i]), x_i[i], s);
      acc = _mm256_fmadd_pd(s, s, acc);
    }
    _mm256_storeu_pd(out + j, _mm256_sqrt_pd(acc));
  }
  for (; j < n; ++j) {
    double acc = 0.0;
    for (int r = 0; r < rows; ++r) {
      double s = 0.0;
      for (int i = 0; i < 6; ++i) s = std::fma(q[6 * r + i], x[i * n + j], s);
      acc = std::fma(s, s, acc);
    }
    out[j] = std::sqrt(acc);
  }
}

void det_minor_sum(const double* x, double* det, double* minor_sum, std::size_t n) {
  constexpr double kr = 0.70710678118654752440;
  const __m256d r = _mm256_set1_pd(kr);
  const std::size_t vec_end = n & ~std::size_t{3};
  std::size_t j = 0;
  for (; j < vec_end; j += 4) {
    const __m256d a11 = _mm256_loadu_pd(x + j);
    const __m256d a22 = _mm256_loadu_pd(x + n + j);
    const __m256d a33 = _mm256_loadu_pd(x + 2 * n + j);
    const __m256d a12 = _mm256_mul_pd(r, _mm256_loadu_pd(x + 3 * n + j));
    const __m256d a13 = _mm256_mul_pd(r, _mm256_loadu_pd(x + 4 * n + j));
    const __m256d a23 = _mm256_mul_pd(r, _mm256_loadu_pd(x + 5 * n + j));
    const __m256d m12 = _mm256_fmsub_pd(a11, a22, _mm256_mul_pd(a12, a12));
    const __m256d m13 = _mm256_fmsub_pd(a11, a33, _mm256_mul_pd(a13, a13));
    const __m256d m23 = _mm256_fmsub_pd(a22, a33, _mm256_mul_pd(a23, a23));
    const __m256d c2 = _mm256_fmsub_pd(a12, a33, _mm256_mul_pd(a23, a13));
    const __m256d c3 = _mm256_fmsub_pd(a12, a23, _mm256_mul_pd(a22, a13));
    __m256d d = _mm256_mul_pd(a11, m23);
    d = _mm256_fnmadd_pd(a12, c2, d);
    d = _mm256_fmadd_pd(a13, c3, d);
    _mm256_storeu_pd(det + j, d);
    _mm256_storeu_pd(minor_sum + j, _mm256_add_pd(_mm256_add_pd(m12, m13), m23));
  }
  for (; j < n; ++j) {
    const double a11 = x[j], a22 = x[n + j], a33 = x[2 * n + j];
    const double a12 = kr * x[3 * n + j], a13 = kr * x[4 * n + j], a23 = kr * x[5 * n + j];
    const double m12 = a11 * a22 - a12 * a12;
    const double m13 = a11 * a33 - a13 * a13;
    const double m23 = a22 * a33 - a23 * a23;
    det[j] = a11 * m23 - a12 * (a12 * a33 - a23 * a13) + a13 * (a12 * a23 - a22 * a13);
    minor_sum[j] = m12 + m13 + m23;
  }
}

}  // namespace socr::kernels::avx2

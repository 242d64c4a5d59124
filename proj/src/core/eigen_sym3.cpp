#include <algorithm>
#include <cmath>
#include <limits>

#include "socr/linalg.hpp"

namespace socr {

EigenTriple eigen_sym3(const SymMat3& s) {
  double a[3][3] = {{s.a11, s.a12, s.a13}, {s.a12, s.a22, s.a23}, {s.a13, s.a23, s.a33}};
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  const double scale = s.norm();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::sqrt(a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]);
    if (off <= eps * 1e-2 * scale || off == 0.0) break;

    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;

        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - sn * akq;
          a[k][q] = sn * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - sn * aqk;
          a[q][k] = sn * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - sn * vkq;
          v[k][q] = sn * vkp + c * vkq;
        }
      }
    }
  }

  int order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](int i, int j) { return a[i][i] < a[j][j]; });

  EigenTriple out;
  for (int c = 0; c < 3; ++c) {
    const int src = order[c];
    out.values[c] = a[src][src];
    int big = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(v[k][src]) > std::abs(v[big][src])) big = k;
    const double sign = v[big][src] < 0 ? -1.0 : 1.0;
    for (int k = 0; k < 3; ++k) out.vectors[k][c] = sign * v[k][src];
  }
  return out;
}

double lambda_min(const SymMat3& a) { return eigen_sym3(a).values[0]; }

}  // namespace socr

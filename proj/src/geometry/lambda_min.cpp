#include "lambda_min.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace socr::detail {

SmallMat Pencil::at(const SmallVec& y) const {
  SmallMat m = f0;
  for (int i = 0; i < params(); ++i) m += y(i) * f[i];
  return m;
}

namespace {

using HessMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 6, 6>;

double min_eigenvalue(const SmallMat& m) {
  Eigen::SelfAdjointEigenSolver<SmallMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Barrier {
  const Pencil& pencil;
  double radius2;

  // Objective -s t - log det(F(y) - tI) - log(R^2 - |y|^2); +inf if infeasible.
  double value(const SmallVec& y, double t, double s) const {
    const double q = radius2 - y.squaredNorm();
    if (!(q > 0)) return kInf;
    SmallMat z = pencil.at(y);
    z.diagonal().array() -= t;
    Eigen::LLT<SmallMat> llt(z);
    if (llt.info() != Eigen::Success) return kInf;
    double logdet = 0;
    for (int i = 0; i < z.rows(); ++i) {
      const double d = llt.matrixL()(i, i);
      if (!(d > 0)) return kInf;
      logdet += 2.0 * std::log(d);
    }
    return -s * t - logdet - std::log(q);
  }
};

}  // namespace

LambdaMinSolution maximize_lambda_min(const Pencil& pencil, SmallVec y, double radius,
                                      double gap_tol) {
  const int k = pencil.size();
  const int p = pencil.params();
  const int nv = p + 1;
  const Barrier barrier{pencil, radius * radius};

  if (y.norm() > 0.5 * radius) y *= 0.5 * radius / y.norm();
  double t = min_eigenvalue(pencil.at(y)) - 1.0;

  LambdaMinSolution sol;
  const double nu = k + 1.0;  // barrier parameter
  double s = 1.0;
  for (;;) {
    for (int iter = 0; iter < 100; ++iter) {
      SmallMat z = pencil.at(y);
      z.diagonal().array() -= t;
      const SmallMat zi = z.llt().solve(SmallMat::Identity(k, k));
      const double q = barrier.radius2 - y.squaredNorm();

      std::array<SmallMat, 6> g;
      for (int i = 0; i < p; ++i) g[i] = zi * pencil.f[i];

      SmallVec grad(nv);
      HessMat hess(nv, nv);
      for (int i = 0; i < p; ++i) {
        grad(i) = -g[i].trace() + 2.0 * y(i) / q;
        for (int j = 0; j <= i; ++j) {
          double h = (g[i] * g[j]).trace() + 4.0 * y(i) * y(j) / (q * q);
          if (i == j) h += 2.0 / q;
          hess(i, j) = hess(j, i) = h;
        }
        hess(i, p) = hess(p, i) = -(g[i] * zi).trace();
      }
      grad(p) = -s + zi.trace();
      hess(p, p) = (zi * zi).trace();

      const SmallVec step = -hess.ldlt().solve(grad);
      const double slope = grad.dot(step);
      if (!std::isfinite(slope) || -slope < 1e-12) break;

      // The objective is self-concordant. Inside the quadratic region
      // (decrement < 1/4) the full step is feasible and f values are too large
      // for an Armijo test to resolve, so it is taken as is. Outside, the
      // damped step 1 / (1 + decrement) is feasible and decreasing; backtracking
      // only guards against roundoff.
      const double decrement = std::sqrt(-slope);
      bool moved = false;
      if (decrement < 0.25) {
        const SmallVec yn = y + step.head(p);
        const double tn = t + step(p);
        if (std::isfinite(barrier.value(yn, tn, s))) {
          y = yn;
          t = tn;
          moved = true;
        }
      } else {
        const double f0 = barrier.value(y, t, s);
        for (double alpha = 1.0 / (1.0 + decrement); alpha > 1e-14; alpha *= 0.5) {
          const SmallVec yn = y + alpha * step.head(p);
          const double tn = t + alpha * step(p);
          if (barrier.value(yn, tn, s) <= f0 + 0.25 * alpha * slope) {
            y = yn;
            t = tn;
            moved = true;
            break;
          }
        }
      }
      ++sol.newton_steps;
      if (!moved) break;
    }
    if (nu / s <= gap_tol) break;
    s *= 10.0;
  }

  sol.y = y;
  sol.value = min_eigenvalue(pencil.at(y));
  return sol;
}

}  // namespace socr::detail

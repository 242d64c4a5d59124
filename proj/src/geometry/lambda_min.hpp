#pragma once

#include <Eigen/Dense>
#include <vector>

namespace socr::detail {

// Pencils here are at most 3 x 3 with at most 5 parameters; bounded sizes keep
// the Newton loop off the heap.
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 6, 1>;

/// Affine family F(y) = f0 + sum_i y_i f[i] of symmetric k x k matrices.
struct Pencil {
  SmallMat f0;
  std::vector<SmallMat> f;

  int size() const { return static_cast<int>(f0.rows()); }
  int params() const { return static_cast<int>(f.size()); }
  SmallMat at(const SmallVec& y) const;
};

struct LambdaMinSolution {
  SmallVec y;
  double value = 0;  // lambda_min(F(y))
  int newton_steps = 0;
};

/// Maximizes lambda_min(F(y)) over |y| <= radius with a log-barrier
/// path-following method on the epigraph form
///   max t  s.t.  F(y) - t I > 0,  radius^2 - |y|^2 > 0,
/// stopping once the duality-gap bound drops below gap_tol. The central path
/// converges to the analytic center of the optimal set, so at a zero optimum
/// the returned point has maximal rank among maximizers.
LambdaMinSolution maximize_lambda_min(const Pencil& pencil, SmallVec y0, double radius,
                                      double gap_tol = 1e-11);

}  // namespace socr::detail

#pragma once

#include <cstdint>
#include <random>

#include "socr/sym_mat3.hpp"

namespace socr {

namespace detail {
// splitmix64 finalizer, used only to fold (seed, index, stream) into one seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Independent stream for (seed, index, stream). Per-item randomness is drawn
/// from its own generator so results do not depend on iteration order.
/// Seeding from a single word keeps construction cheap; a seed_seq here
/// dominated the cost of per-sample verification.
inline std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t index,
                                   std::uint64_t stream = 0) {
  const std::uint64_t h = detail::mix64(detail::mix64(detail::mix64(seed) ^ index) ^ stream);
  return std::mt19937_64(h);
}

/// Symmetric matrix with i.i.d. standard normal svec coordinates.
template <class Rng>
SymMat3 gaussian_sym(Rng& rng) {
  std::normal_distribution<double> n01;
  Vec6 v;
  for (double& x : v) x = n01(rng);
  return smat(v);
}

template <class Rng>
Mat3 gaussian_mat3(Rng& rng) {
  std::normal_distribution<double> n01;
  Mat3 m;
  for (auto& row : m)
    for (double& x : row) x = n01(rng);
  return m;
}

}  // namespace socr

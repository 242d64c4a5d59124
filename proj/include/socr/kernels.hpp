#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Batched arithmetic over structure-of-arrays sample blocks. A block of n
// samples with r coordinates is stored row-major as r rows of length n, so
// coordinate i of sample j lives at data[i * n + j].
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is picked once at runtime from the CPU feature flags;
// set_isa() overrides the choice (tests use it to compare the two).
namespace socr::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Returns false (and keeps the current choice) if `isa` is unavailable.
bool set_isa(Isa isa);

/// out(rows x n) = m(rows x cols, row-major) * in(cols x n) + offset(rows).
/// An empty offset means zero.
void affine_map(int rows, int cols, std::span<const double> m, std::span<const double> offset,
                std::span<const double> in, std::span<double> out, std::size_t n);

/// Per sample min(w3 - |(w1,w2)|, v3 - |(v1,v2)|) for z = (w, v) in a 6 x n block.
void q2_margin(std::span<const double> z, std::span<double> out, std::size_t n);

/// Per sample |q x_j| for q (rows x 6, row-major) and a 6 x n block. With q an
/// orthonormal basis of a complement this is the distance to the subspace.
void complement_norm(int rows, std::span<const double> q, std::span<const double> x,
                     std::span<double> out, std::size_t n);

/// Per sample determinant and sum of 2x2 principal minors of smat(x_j).
void det_minor_sum(std::span<const double> x, std::span<double> det, std::span<double> minor_sum,
                   std::size_t n);

namespace scalar {
void affine_map(int rows, int cols, const double* m, const double* offset, const double* in,
                double* out, std::size_t n);
void q2_margin(const double* z, double* out, std::size_t n);
void complement_norm(int rows, const double* q, const double* x, double* out, std::size_t n);
void det_minor_sum(const double* x, double* det, double* minor_sum, std::size_t n);
}  // namespace scalar

namespace avx2 {
void affine_map(int rows, int cols, const double* m, const double* offset, const double* in,
                double* out, std::size_t n);
void q2_margin(const double* z, double* out, std::size_t n);
void complement_norm(int rows, const double* q, const double* x, double* out, std::size_t n);
void det_minor_sum(const double* x, double* det, double* minor_sum, std::size_t n);
}  // namespace avx2

}  // namespace socr::kernels

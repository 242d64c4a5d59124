#include "socr/kernels.hpp"

#include <atomic>
#include <cassert>

namespace socr::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(SOCR_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() { return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::kScalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool set_isa(Isa isa) {
  if (!isa_available(isa)) return false;
  current().store(isa, std::memory_order_relaxed);
  return true;
}

#if defined(SOCR_BUILD_AVX2)
#define SOCR_DISPATCH(fn, ...)                                   \
  do {                                                           \
    if (active_isa() == Isa::kAvx2) return avx2::fn(__VA_ARGS__); \
    return scalar::fn(__VA_ARGS__);                              \
  } while (0)
#else
#define SOCR_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void affine_map(int rows, int cols, std::span<const double> m, std::span<const double> offset,
                std::span<const double> in, std::span<double> out, std::size_t n) {
  assert(m.size() >= static_cast<std::size_t>(rows * cols));
  assert(offset.empty() || offset.size() >= static_cast<std::size_t>(rows));
  assert(in.size() >= cols * n && out.size() >= rows * n);
  const double* off = offset.empty() ? nullptr : offset.data();
  SOCR_DISPATCH(affine_map, rows, cols, m.data(), off, in.data(), out.data(), n);
}

void q2_margin(std::span<const double> z, std::span<double> out, std::size_t n) {
  assert(z.size() >= 6 * n && out.size() >= n);
  SOCR_DISPATCH(q2_margin, z.data(), out.data(), n);
}

void complement_norm(int rows, std::span<const double> q, std::span<const double> x,
                     std::span<double> out, std::size_t n) {
  assert(q.size() >= static_cast<std::size_t>(6 * rows) && x.size() >= 6 * n && out.size() >= n);
  SOCR_DISPATCH(complement_norm, rows, q.data(), x.data(), out.data(), n);
}

void det_minor_sum(std::span<const double> x, std::span<double> det, std::span<double> minor_sum,
                   std::size_t n) {
  assert(x.size() >= 6 * n && det.size() >= n && minor_sum.size() >= n);
  SOCR_DISPATCH(det_minor_sum, x.data(), det.data(), minor_sum.data(), n);
}

#undef SOCR_DISPATCH

}  // namespace socr::kernels

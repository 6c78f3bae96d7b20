#include "sas/kernels.hpp"

namespace sas::kernels {

namespace {

PanelCosineSumFn pick() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) {
    return &panel_cosine_sum_simd;
  }
  return &panel_cosine_sum_scalar;
#elif defined(__aarch64__)
  return &panel_cosine_sum_simd;
#else
  return &panel_cosine_sum_scalar;
#endif
}

}  // namespace

PanelCosineSumFn active_kernel() {
  static const PanelCosineSumFn fn = pick();
  return fn;
}

const char* active_kernel_name() {
  return active_kernel() == &panel_cosine_sum_simd ? "simd" : "scalar";
}

}  // namespace sas::kernels

#include <cmath>
#include <experimental/simd>

#include "sas/kernels.hpp"

namespace stdx = std::experimental;

namespace sas::kernels {

namespace {
using V = stdx::native_simd<double>;
constexpr std::size_t kResyncStride = 256;
}  // namespace

// Phasor-rotation variant: cos((w0 + j*step)*u + phase) advances by a fixed
// rotation angle step*u per panel, so the inner loop is multiply/add only.
// The recurrence is re-seeded from std::cos every kResyncStride panels to
// bound rounding drift.
double panel_cosine_sum_simd(const double* node0, double step,
                             std::size_t num_panels, const double* coeff,
                             double u, double phase) {
  constexpr std::size_t W = V::size();
  if constexpr (kNodesPerPanel % W != 0) {
    return panel_cosine_sum_scalar(node0, step, num_panels, coeff, u, phase);
  } else {
    constexpr std::size_t G = kNodesPerPanel / W;
    const double delta = step * u;
    const V cd(std::cos(delta));
    const V sd(std::sin(delta));
    V cosv[G], sinv[G], acc[G], comp[G];
    for (std::size_t g = 0; g < G; ++g) {
      acc[g] = V(0.0);
      comp[g] = V(0.0);
    }
    for (std::size_t j = 0; j < num_panels; ++j) {
      if (j % kResyncStride == 0) {
        const double shift = static_cast<double>(j) * step;
        for (std::size_t g = 0; g < G; ++g) {
          alignas(32) double cb[W], sb[W];
          for (std::size_t l = 0; l < W; ++l) {
            const double ang = (node0[g * W + l] + shift) * u + phase;
            cb[l] = std::cos(ang);
            sb[l] = std::sin(ang);
          }
          cosv[g].copy_from(cb, stdx::vector_aligned);
          sinv[g].copy_from(sb, stdx::vector_aligned);
        }
      }
      const double* cj = coeff + j * kNodesPerPanel;
      for (std::size_t g = 0; g < G; ++g) {
        V w;
        w.copy_from(cj + g * W, stdx::element_aligned);
        const V term = w * cosv[g];
        const V y = term - comp[g];
        const V t = acc[g] + y;
        comp[g] = (t - acc[g]) - y;
        acc[g] = t;
        const V nc = cosv[g] * cd - sinv[g] * sd;
        sinv[g] = sinv[g] * cd + cosv[g] * sd;
        cosv[g] = nc;
      }
    }
    double sum = 0.0, c = 0.0;
    for (std::size_t g = 0; g < G; ++g) {
      for (std::size_t l = 0; l < W; ++l) {
        const double term = acc[g][l] - comp[g][l];
        const double y = term - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
      }
    }
    return sum;
  }
}

}  // namespace sas::kernels

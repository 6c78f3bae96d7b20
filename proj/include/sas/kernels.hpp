#pragma once

#include <cstddef>

namespace sas::kernels {

inline constexpr std::size_t kNodesPerPanel = 16;

// Weighted cosine sum over a uniform panelization of the frequency axis:
//
//   sum_{j=0}^{num_panels-1} sum_{i=0}^{15}
//       coeff[16*j + i] * cos((node0[i] + j*step) * u + phase)
//
// node0 holds the 16 Gauss-Legendre abscissae of panel 0; panel j shifts them
// by j*step.  This is the inner loop of the Fourier inversion of the stable
// density, so it has a scalar reference implementation and a SIMD variant
// using a phasor rotation recurrence (re-synchronized periodically to keep
// rounding drift below 1e-13 of the coefficient mass).
using PanelCosineSumFn = double (*)(const double* node0, double step,
                                    std::size_t num_panels,
                                    const double* coeff, double u,
                                    double phase);

double panel_cosine_sum_scalar(const double* node0, double step,
                               std::size_t num_panels, const double* coeff,
                               double u, double phase);
double panel_cosine_sum_simd(const double* node0, double step,
                             std::size_t num_panels, const double* coeff,
                             double u, double phase);

// Runtime-selected best kernel for this CPU.
PanelCosineSumFn active_kernel();
const char* active_kernel_name();

}  // namespace sas::kernels

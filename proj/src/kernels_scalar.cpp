#include <cmath>

#include "sas/kernels.hpp"

namespace sas::kernels {

double panel_cosine_sum_scalar(const double* node0, double step,
                               std::size_t num_panels, const double* coeff,
                               double u, double phase) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t j = 0; j < num_panels; ++j) {
    const double shift = static_cast<double>(j) * step;
    const double* c = coeff + j * kNodesPerPanel;
    for (std::size_t i = 0; i < kNodesPerPanel; ++i) {
      const double term = c[i] * std::cos((node0[i] + shift) * u + phase);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

}  // namespace sas::kernels

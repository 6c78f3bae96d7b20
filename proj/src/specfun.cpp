#include "sas/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace sas::specfun {

namespace {

// Lanczos approximation, g = 607/128, 15 coefficients.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("gamma_fn: argument must be positive");
  }
  if (x > 60.0) {
    throw std::domain_error("gamma_fn: argument cap is 60");
  }
  double s = kLanczos[0];
  for (int k = 1; k < 15; ++k) {
    s += kLanczos[k] / (x - 1.0 + k);
  }
  const double t = x + kLanczosG - 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) * s;
}

double global_deriv_bound(double alpha, int n) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::domain_error("global_deriv_bound: alpha must lie in (0, 2)");
  }
  if (n < 0) {
    throw std::domain_error("global_deriv_bound: order must be nonnegative");
  }
  return gamma_fn((n + 1) / alpha) / (M_PI * alpha);
}

}  // namespace sas::specfun

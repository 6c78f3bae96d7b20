#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sas::quad {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_panels = 100000;
  double freq_cutoff_eps = 1e-16;
  double tail_switch_radius = 32.0;

  void validate() const {
    if (!(abs_tol > 0 && rel_tol > 0 && freq_cutoff_eps > 0 &&
          tail_switch_radius > 0)) {
      throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    }
    if (max_panels < 16) {
      throw std::invalid_argument("QuadratureConfig: max_panels must be >= 16");
    }
  }
};

struct QuadResult {
  double value = 0.0;
  double err = 0.0;
  std::size_t panels = 0;
  bool converged = true;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_err(achieved) {}
  double achieved_err;
};

// Compensated (Kahan) accumulator.
struct Accum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// 16-point Gauss-Legendre rule on [-1, 1]; nodes in ascending order.
extern const double kGL16Nodes[16];
extern const double kGL16Weights[16];

// Gauss7/Kronrod15 estimate of the integral over [a, b].
QuadResult gk15(const std::function<double(double)>& f, double a, double b);

// Adaptive bisection on [a, b] driven by the GK15 error estimate.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol, double rel_tol = 1e-10,
                              std::size_t max_panels = 100000);

// Like integrate_adaptive but records the final subdivision so the same mesh
// can be reused on nearby integrands (finite-difference consistency).
struct Partition {
  std::vector<double> edges;  // ascending, edges.front()=a, edges.back()=b
};
QuadResult integrate_adaptive_partition(const std::function<double(double)>& f,
                                        double a, double b, double abs_tol,
                                        double rel_tol, std::size_t max_panels,
                                        Partition* out);
QuadResult integrate_on(const Partition& part,
                        const std::function<double(double)>& f);

// Integral over [a, +inf) of a decaying integrand: geometric segments
// [a, 2a], [2a, 4a], ... (shifted so it also works for a < 1), each handled
// adaptively, stopping once a segment contributes less than tol.
QuadResult integrate_decaying(const std::function<double(double)>& f, double a,
                              double abs_tol, double upper_cap = 1e300);

}  // namespace sas::quad

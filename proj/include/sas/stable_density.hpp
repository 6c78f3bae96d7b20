#pragma once

#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <vector>

#include "sas/quadrature.hpp"

namespace sas {

// Symmetric alpha-stable model: characteristic function of the eta=1 member
// is exp(-|w|^alpha).
struct StableModel {
  double alpha = 1.0;
  double eta = 1.0;
  void validate() const;
};

struct TailReport {
  int n = 0;
  double u_lo = 0.0;
  double u_hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
};

// Evaluator for the standard density p_N, its u-derivatives up to order 4,
// the dispersion-scaled family and the dispersion derivative.
//
// Two evaluation routes:
//  * Fourier inversion (1/pi) * int_0^inf w^n exp(-w^alpha) cos(w u + n pi/2) dw
//    on a fixed uniform panelization with 16-point Gauss-Legendre panels,
//    valid for |u| <= kQuadMaxU (panel width is sized so the rule resolves
//    the oscillation at that radius);
//  * the power tail series in |u|^-alpha, used beyond
//    config().tail_switch_radius.
// Both routes are exposed so they can be cross-checked at the crossover.
class StableDensity {
 public:
  static constexpr int kMaxOrder = 4;
  static constexpr double kQuadMaxU = 64.0;

  explicit StableDensity(double alpha, quad::QuadratureConfig cfg = {});

  double alpha() const { return alpha_; }
  const quad::QuadratureConfig& config() const { return cfg_; }

  double pdf(double u) const;           // clamps quadrature noise below zero
  double deriv(int n, double u) const;  // d^n p_N / du^n
  double scaled_pdf(double eta, double t) const;
  double dispersion_deriv(double eta, double t) const;

  double deriv_quadrature(int n, double u) const;
  double deriv_tail_series(int n, double u) const;
  double tail_mass_beyond(double R) const;  // mass of |u| > R, R >= switch
  double total_mass() const;

  TailReport tail_asymptote(int n, double u_lo = 50.0, double u_hi = 500.0) const;

  bool negative_clamped() const { return clamped_.load(); }

 private:
  struct FreqTable {
    double step = 0.0;
    std::size_t panels = 0;        // uniform panels covering [step, Omega]
    std::array<double, 16> node0{};
    std::vector<double> coeff;     // GL weight * w^n exp(-w^alpha) / pi
    // Dyadically graded head on [0, step]; resolves the w -> 0 singularity
    // of exp(-w^alpha) for alpha < 1.
    std::vector<double> head_omega;
    std::vector<double> head_coeff;
    double truncation_err = 0.0;
  };
  struct TailSeries {
    std::vector<double> log_mag;  // per term m = 1..M, includes |sin| factor
    std::vector<double> log_env;  // sin-free envelope, used for truncation
    std::vector<double> sign;     // -1, 0, +1
  };

  const FreqTable& table(int n) const;
  const TailSeries& series(int n) const;
  double cauchy_deriv(int n, double u) const;

  double alpha_;
  quad::QuadratureConfig cfg_;
  mutable std::mutex mu_;
  mutable std::array<std::unique_ptr<FreqTable>, kMaxOrder + 1> tables_;
  mutable std::array<std::unique_ptr<TailSeries>, kMaxOrder + 1> series_;
  mutable std::atomic<bool> clamped_{false};
};

// Shared default-config evaluator per alpha (tables are expensive to build).
const StableDensity& stable_evaluator(double alpha);

// Spec-surface wrappers.  stable_pdf / stable_pdf_deriv require eta == 1.
double stable_pdf(const StableModel& model, double u);
double stable_pdf_deriv(const StableModel& model, int n, double u);
double scaled_pdf(const StableModel& model, double t);
double dispersion_deriv(const StableModel& model, double t);
TailReport tail_asymptote(double alpha, int n, double u_lo = 50.0,
                          double u_hi = 500.0);

}  // namespace sas

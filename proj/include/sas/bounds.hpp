#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "sas/source_dist.hpp"
#include "sas/stable_density.hpp"

namespace sas {

// All bound certifications quantify over a dispersion window (b, 2b).
struct DispersionWindow {
  double b = 0.5;
  void validate() const;
  double lo() const { return b; }
  double hi() const { return 2.0 * b; }
};

// Admissible tail constants fitted on a grid u in [u_lo, u_hi]:
//   p_N(u)        <= k / |u|^{1+alpha}        (upper)
//   p_N(u)        >= K / |u|^{1+alpha}        (lower, valid for |u| >= T)
//   |p_N'(u)|     <= kappa_1 / |u|^{2+alpha}  (upper)
// Upper constants carry a 5% safety inflation, lower ones a 5% deflation.
// k_tilde = K / (2 * 2^{1/alpha} * 1.1^{1+alpha}) is the constant of the
// mixture lower-bound chain, valid for y >= 10 * median_radius.
struct TailConstants {
  double k = 0.0;
  double kappa_1 = 0.0;
  double K = 0.0;
  double T = 0.0;
  double k_tilde = 0.0;
  double u_lo = 0.0, u_hi = 0.0;
  nlohmann::json to_json() const;
};

// Piecewise dominating function for |d p_eta / d eta| over eta in (b, 2b):
//   s_b(t) = A + B|t|     for |t| <= t0
//   s_b(t) = C * p_N(t)   for |t| >= t0
struct EnvelopeSpec {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double t0 = 0.0;
  DispersionWindow window;
  TailConstants tail;
  nlohmann::json to_json() const;
};

struct CertificateReport {
  std::string bound_id;
  std::string grid_spec;
  double slack_min = 0.0;
  std::array<double, 2> argmax_point{0.0, 0.0};  // location of least slack
  nlohmann::json constants_used;
  bool pass = false;
  nlohmann::json to_json() const;
};

TailConstants fit_tail_constants(double alpha, double u_lo = 50.0,
                                 double u_hi = 500.0);
// Cached default-window fit per alpha.
const TailConstants& fitted_tail_constants(double alpha);

// t0 <= 0 selects the smallest admissible crossover,
// max(u_lo_fit * (2b)^{1/alpha}, tail switch radius).
EnvelopeSpec build_envelope(double alpha, DispersionWindow window,
                            double t0 = 0.0);

double envelope_value(const EnvelopeSpec& spec, double alpha, double t);

CertificateReport certify_domination(double alpha, const EnvelopeSpec& spec,
                                     const std::vector<double>& eta_grid,
                                     const std::vector<double>& t_grid);

// (S_b, L_b): integral of s_b and of ln(1+|y|) s_b over the line.
std::pair<double, double> envelope_integrals(const EnvelopeSpec& spec,
                                             double alpha);

CertificateReport q_lower_bound_check(double alpha, DispersionWindow window,
                                      const SourceDistribution& source,
                                      const std::vector<double>& y_grid);

// Grid helpers shared by the CLI and the acceptance suite.
std::vector<double> domination_t_grid();  // [-200,200] step 0.1 + log tail to 1e4
std::vector<double> window_eta_grid(DispersionWindow window, int points = 8);
std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace sas

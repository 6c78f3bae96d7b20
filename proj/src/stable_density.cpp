#include "sas/stable_density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sas/kernels.hpp"

namespace sas {

void StableModel::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("StableModel: alpha must lie in (0, 2)");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("StableModel: eta must be positive");
  }
}

StableDensity::StableDensity(double alpha, quad::QuadratureConfig cfg)
    : alpha_(alpha), cfg_(cfg) {
  StableModel{alpha, 1.0}.validate();
  cfg_.validate();
  if (!(cfg_.tail_switch_radius <= kQuadMaxU)) {
    throw std::invalid_argument(
        "StableDensity: tail_switch_radius must not exceed the quadrature "
        "validity radius");
  }
}

const StableDensity::FreqTable& StableDensity::table(int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (tables_[n]) {
    return *tables_[n];
  }
  auto tab = std::make_unique<FreqTable>();
  // Frequency cutoff: w^n exp(-w^alpha) < freq_cutoff_eps beyond Omega.
  const double log_eps = -std::log(cfg_.freq_cutoff_eps);
  double omega = std::pow(log_eps, 1.0 / alpha_);
  for (int it = 0; it < 64; ++it) {
    omega = std::pow(log_eps + n * std::log(std::max(omega, 2.0)), 1.0 / alpha_);
  }
  // Panel width sized so 16-point Gauss-Legendre resolves cos(w u) up to
  // |u| = kQuadMaxU (half-width * u <= 4).
  tab->step = 8.0 / kQuadMaxU;
  const std::size_t panels =
      static_cast<std::size_t>(std::ceil(omega / tab->step));
  if (panels > cfg_.max_panels) {
    throw quad::ConvergenceError(
        "StableDensity: frequency panel count exceeds max_panels", omega);
  }
  const auto g = [this, n](double w) {
    return std::pow(w, n) * std::exp(-std::pow(w, alpha_)) / M_PI;
  };
  // Uniform section [step, Omega].
  tab->panels = panels > 0 ? panels - 1 : 0;
  for (int i = 0; i < 16; ++i) {
    tab->node0[i] = tab->step * (1.0 + 0.5 * (quad::kGL16Nodes[i] + 1.0));
  }
  tab->coeff.resize(tab->panels * kernels::kNodesPerPanel);
  for (std::size_t j = 0; j < tab->panels; ++j) {
    const double shift = static_cast<double>(j) * tab->step;
    for (int i = 0; i < 16; ++i) {
      const double w = tab->node0[i] + shift;
      tab->coeff[j * 16 + i] = tab->step * 0.5 * quad::kGL16Weights[i] * g(w);
    }
  }
  // Graded head [0, step]: dyadic intervals [step/2^{k+1}, step/2^k].
  constexpr int kHeadLevels = 56;
  for (int k = 0; k < kHeadLevels; ++k) {
    const double b = tab->step * std::pow(0.5, k);
    const double a = 0.5 * b;
    for (int i = 0; i < 16; ++i) {
      const double w = a + 0.5 * (b - a) * (quad::kGL16Nodes[i] + 1.0);
      tab->head_omega.push_back(w);
      tab->head_coeff.push_back(0.5 * (b - a) * quad::kGL16Weights[i] * g(w));
    }
  }
  const double gom = std::pow(omega, n) * std::exp(-std::pow(omega, alpha_));
  tab->truncation_err =
      gom * std::max(std::pow(omega, 1.0 - alpha_) / alpha_, 1.0) / M_PI;
  tables_[n] = std::move(tab);
  return *tables_[n];
}

const StableDensity::TailSeries& StableDensity::series(int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (series_[n]) {
    return *series_[n];
  }
  auto s = std::make_unique<TailSeries>();
  constexpr int kTerms = 60;
  s->log_mag.resize(kTerms + 1, 0.0);
  s->log_env.resize(kTerms + 1, 0.0);
  s->sign.resize(kTerms + 1, 0.0);
  for (int m = 1; m <= kTerms; ++m) {
    double env = std::lgamma(m * alpha_ + 1.0) - std::lgamma(m + 1.0) -
                 std::log(M_PI);
    for (int j = 1; j <= n; ++j) {
      env += std::log(m * alpha_ + j);
    }
    s->log_env[m] = env;
    const double sv = std::sin(0.5 * m * M_PI * alpha_);
    if (std::fabs(sv) < 1e-13) {
      continue;  // exact zero of sin(m pi alpha / 2), e.g. even m at alpha=1
    }
    double sign = (sv > 0 ? 1.0 : -1.0);
    if (m % 2 == 0) sign = -sign;
    if (n % 2 == 1) sign = -sign;
    s->log_mag[m] = env + std::log(std::fabs(sv));
    s->sign[m] = sign;
  }
  series_[n] = std::move(s);
  return *series_[n];
}

double StableDensity::deriv_quadrature(int n, double u) const {
  if (n < 0 || n > kMaxOrder) {
    throw std::domain_error("StableDensity: derivative order must be 0..4");
  }
  if (std::fabs(u) > kQuadMaxU) {
    throw quad::ConvergenceError(
        "StableDensity: quadrature panelization is not valid beyond |u|=64",
        0.0);
  }
  const FreqTable& tab = table(n);
  const double phase = 0.5 * n * M_PI;
  quad::Accum head;
  for (std::size_t i = 0; i < tab.head_omega.size(); ++i) {
    head.add(tab.head_coeff[i] * std::cos(tab.head_omega[i] * u + phase));
  }
  return head.sum +
         kernels::active_kernel()(tab.node0.data(), tab.step, tab.panels,
                                  tab.coeff.data(), u, phase);
}

double StableDensity::deriv_tail_series(int n, double u) const {
  if (n < 0 || n > kMaxOrder) {
    throw std::domain_error("StableDensity: derivative order must be 0..4");
  }
  const double a = std::fabs(u);
  if (!(a > 0.0)) {
    throw std::domain_error("StableDensity: tail series requires u != 0");
  }
  const TailSeries& s = series(n);
  const double lu = std::log(a);
  const bool asymptotic = alpha_ > 1.0;  // convergent series for alpha <= 1
  double acc = 0.0;
  double prev_env = HUGE_VAL;
  for (std::size_t m = 1; m < s.sign.size(); ++m) {
    const double env = s.log_env[m] - (m * alpha_ + 1.0 + n) * lu;
    if (asymptotic && env > prev_env) {
      break;  // truncate at the smallest sin-free envelope term
    }
    prev_env = env;
    if (s.sign[m] == 0.0) {
      continue;
    }
    const double mag = std::exp(s.log_mag[m] - (m * alpha_ + 1.0 + n) * lu);
    acc += s.sign[m] * mag;
    if (mag < 1e-17 * std::fabs(acc)) {
      break;
    }
  }
  if (u < 0.0 && n % 2 == 1) {
    acc = -acc;
  }
  return acc;
}

double StableDensity::cauchy_deriv(int n, double u) const {
  const double d = 1.0 + u * u;
  switch (n) {
    case 0:
      return 1.0 / (M_PI * d);
    case 1:
      return -2.0 * u / (M_PI * d * d);
    case 2:
      return (6.0 * u * u - 2.0) / (M_PI * d * d * d);
    case 3:
      return (24.0 * u - 24.0 * u * u * u) / (M_PI * d * d * d * d);
    case 4:
      return (120.0 * std::pow(u, 4) - 240.0 * u * u + 24.0) /
             (M_PI * std::pow(d, 5));
    default:
      throw std::domain_error("StableDensity: derivative order must be 0..4");
  }
}

double StableDensity::deriv(int n, double u) const {
  if (!std::isfinite(u)) {
    throw std::domain_error("StableDensity: u must be finite");
  }
  if (alpha_ == 1.0) {
    return cauchy_deriv(n, u);
  }
  if (std::fabs(u) > cfg_.tail_switch_radius) {
    return deriv_tail_series(n, u);
  }
  return deriv_quadrature(n, u);
}

double StableDensity::pdf(double u) const {
  double v = deriv(0, u);
  if (v < 0.0) {
    clamped_.store(true);
    v = 0.0;
  }
  return v;
}

double StableDensity::scaled_pdf(double eta, double t) const {
  StableModel{alpha_, eta}.validate();
  const double s = std::pow(eta, -1.0 / alpha_);
  return s * pdf(t * s);
}

double StableDensity::dispersion_deriv(double eta, double t) const {
  StableModel{alpha_, eta}.validate();
  const double x = t * std::pow(eta, -1.0 / alpha_);
  return -(1.0 / alpha_) * std::pow(eta, -1.0 - 1.0 / alpha_) * pdf(x) -
         (1.0 / alpha_) * t * std::pow(eta, -1.0 - 2.0 / alpha_) * deriv(1, x);
}

double StableDensity::tail_mass_beyond(double R) const {
  if (!(R >= cfg_.tail_switch_radius)) {
    throw std::invalid_argument(
        "StableDensity: tail mass requires R beyond the tail switch radius");
  }
  const TailSeries& s = series(0);
  const double lR = std::log(R);
  const bool asymptotic = alpha_ > 1.0;
  double acc = 0.0;
  double prev_env = HUGE_VAL;
  for (std::size_t m = 1; m < s.sign.size(); ++m) {
    const double env = s.log_env[m] - m * alpha_ * lR - std::log(m * alpha_);
    if (asymptotic && env > prev_env) {
      break;
    }
    prev_env = env;
    if (s.sign[m] == 0.0) {
      continue;
    }
    const double mag =
        std::exp(s.log_mag[m] - m * alpha_ * lR - std::log(m * alpha_));
    acc += s.sign[m] * mag;
    if (mag < 1e-17 * std::fabs(acc)) {
      break;
    }
  }
  return 2.0 * acc;
}

double StableDensity::total_mass() const {
  const double R = cfg_.tail_switch_radius;
  quad::QuadResult core = quad::integrate_adaptive(
      [this](double u) { return pdf(u); }, -R, R, cfg_.abs_tol, cfg_.rel_tol,
      cfg_.max_panels);
  return core.value + tail_mass_beyond(R);
}

TailReport StableDensity::tail_asymptote(int n, double u_lo, double u_hi) const {
  if (!(0.0 < u_lo && u_lo < u_hi)) {
    throw std::invalid_argument("tail_asymptote: need 0 < u_lo < u_hi");
  }
  constexpr int kPoints = 40;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < kPoints; ++i) {
    const double lu = std::log(u_lo) +
                      (std::log(u_hi) - std::log(u_lo)) * i / (kPoints - 1);
    const double v = std::fabs(deriv(n, std::exp(lu)));
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::runtime_error(
          "tail_asymptote: density underflows on the fit window; raise it");
    }
    const double lv = std::log(v);
    sx += lu;
    sy += lv;
    sxx += lu * lu;
    sxy += lu * lv;
  }
  TailReport rep;
  rep.n = n;
  rep.u_lo = u_lo;
  rep.u_hi = u_hi;
  rep.slope = (kPoints * sxy - sx * sy) / (kPoints * sxx - sx * sx);
  rep.intercept = (sy - rep.slope * sx) / kPoints;
  return rep;
}

const StableDensity& stable_evaluator(double alpha) {
  static std::mutex reg_mu;
  static std::map<double, std::unique_ptr<StableDensity>> registry;
  std::lock_guard<std::mutex> lock(reg_mu);
  auto it = registry.find(alpha);
  if (it == registry.end()) {
    it = registry.emplace(alpha, std::make_unique<StableDensity>(alpha)).first;
  }
  return *it->second;
}

double stable_pdf(const StableModel& model, double u) {
  model.validate();
  if (model.eta != 1.0) {
    throw std::invalid_argument("stable_pdf: standard density requires eta=1");
  }
  return stable_evaluator(model.alpha).pdf(u);
}

double stable_pdf_deriv(const StableModel& model, int n, double u) {
  model.validate();
  if (model.eta != 1.0) {
    throw std::invalid_argument(
        "stable_pdf_deriv: standard density requires eta=1");
  }
  return stable_evaluator(model.alpha).deriv(n, u);
}

double scaled_pdf(const StableModel& model, double t) {
  model.validate();
  return stable_evaluator(model.alpha).scaled_pdf(model.eta, t);
}

double dispersion_deriv(const StableModel& model, double t) {
  model.validate();
  return stable_evaluator(model.alpha).dispersion_deriv(model.eta, t);
}

TailReport tail_asymptote(double alpha, int n, double u_lo, double u_hi) {
  return stable_evaluator(alpha).tail_asymptote(n, u_lo, u_hi);
}

}  // namespace sas

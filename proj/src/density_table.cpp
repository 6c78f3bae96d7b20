#include "sas/density_table.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "sas/parallel.hpp"

namespace sas {

namespace {

// C^2 smoothstep on [0, 1].
inline double smoother(double x) {
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}
inline double smoother_deriv(double x) {
  return 30.0 * x * x * (1.0 - x) * (1.0 - x);
}

}  // namespace

DensityTable::DensityTable(double alpha)
    : alpha_(alpha), cauchy_(alpha == 1.0), direct_(stable_evaluator(alpha)) {
  if (cauchy_) {
    return;
  }
  const std::size_t n = static_cast<std::size_t>(std::lround(umax_ / h_)) + 1;
  p_.resize(n);
  dp_.resize(n);
  parallel_for(n, [this](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double u = i * h_;
      p_[i] = direct_.deriv_quadrature(0, u);
      dp_[i] = direct_.deriv_quadrature(1, u);
    }
  });
  zlo_ = std::log(30.0);
  const std::size_t nz = static_cast<std::size_t>(
                             std::ceil((std::log(1e300) - zlo_) / zh_)) +
                         2;
  lp_.resize(nz);
  dlp_.resize(nz);
  parallel_for(nz, [this](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double a = std::exp(zlo_ + i * zh_);
      const double p = direct_.deriv_tail_series(0, a);
      lp_[i] = std::log(p);
      dlp_[i] = a * direct_.deriv_tail_series(1, a) / p;
    }
  });
}

double DensityTable::far_pdf(double a) const {
  const double z = std::log(a);
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>((z - zlo_) / zh_), lp_.size() - 2);
  const double t = (z - (zlo_ + i * zh_)) / zh_;
  const double t2 = t * t, t3 = t2 * t;
  const double H = (2 * t3 - 3 * t2 + 1) * lp_[i] +
                   (t3 - 2 * t2 + t) * zh_ * dlp_[i] +
                   (-2 * t3 + 3 * t2) * lp_[i + 1] + (t3 - t2) * zh_ * dlp_[i + 1];
  return std::exp(H);
}

double DensityTable::far_pdf_deriv(double a) const {
  const double z = std::log(a);
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>((z - zlo_) / zh_), lp_.size() - 2);
  const double t = (z - (zlo_ + i * zh_)) / zh_;
  const double t2 = t * t, t3 = t2 * t;
  const double H = (2 * t3 - 3 * t2 + 1) * lp_[i] +
                   (t3 - 2 * t2 + t) * zh_ * dlp_[i] +
                   (-2 * t3 + 3 * t2) * lp_[i + 1] + (t3 - t2) * zh_ * dlp_[i + 1];
  const double Hp = ((6 * t2 - 6 * t) * lp_[i] +
                     (3 * t2 - 4 * t + 1) * zh_ * dlp_[i] +
                     (-6 * t2 + 6 * t) * lp_[i + 1] +
                     (3 * t2 - 2 * t) * zh_ * dlp_[i + 1]) /
                    zh_;
  return std::exp(H) * Hp / a;  // d/da exp(H(ln a))
}

double DensityTable::hermite(double a) const {
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>(a / h_), p_.size() - 2);
  const double t = (a - i * h_) / h_;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p_[i] + (t3 - 2 * t2 + t) * h_ * dp_[i] +
         (-2 * t3 + 3 * t2) * p_[i + 1] + (t3 - t2) * h_ * dp_[i + 1];
}

double DensityTable::hermite_deriv(double a) const {
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>(a / h_), p_.size() - 2);
  const double t = (a - i * h_) / h_;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * p_[i] + (3 * t2 - 4 * t + 1) * h_ * dp_[i] +
          (-6 * t2 + 6 * t) * p_[i + 1] + (3 * t2 - 2 * t) * h_ * dp_[i + 1]) /
         h_;
}

double DensityTable::pdf(double u) const {
  const double a = std::fabs(u);
  if (cauchy_) {
    return 1.0 / (M_PI * (1.0 + a * a));
  }
  if (a >= blend_hi_) {
    return far_pdf(a);
  }
  if (a <= blend_lo_) {
    return hermite(a);
  }
  const double x = (a - blend_lo_) / (blend_hi_ - blend_lo_);
  const double w = smoother(x);
  return (1.0 - w) * hermite(a) + w * far_pdf(a);
}

double DensityTable::pdf_deriv(double u) const {
  const double a = std::fabs(u);
  double d;
  if (cauchy_) {
    const double q = 1.0 + a * a;
    d = -2.0 * a / (M_PI * q * q);
  } else if (a >= blend_hi_) {
    d = far_pdf_deriv(a);
  } else if (a <= blend_lo_) {
    d = hermite_deriv(a);
  } else {
    const double span = blend_hi_ - blend_lo_;
    const double x = (a - blend_lo_) / span;
    const double w = smoother(x);
    const double hv = hermite(a);
    const double sv = far_pdf(a);
    d = (1.0 - w) * hermite_deriv(a) + w * far_pdf_deriv(a) +
        smoother_deriv(x) / span * (sv - hv);
  }
  return u < 0.0 ? -d : d;
}

double DensityTable::scaled_pdf(double eta, double t) const {
  const double s = std::pow(eta, -1.0 / alpha_);
  return s * pdf(t * s);
}

double DensityTable::dispersion_deriv(double eta, double t) const {
  const double x = t * std::pow(eta, -1.0 / alpha_);
  return -(1.0 / alpha_) * std::pow(eta, -1.0 - 1.0 / alpha_) * pdf(x) -
         (1.0 / alpha_) * t * std::pow(eta, -1.0 - 2.0 / alpha_) *
             pdf_deriv(x);
}

std::shared_ptr<const DensityTable> DensityTable::get(double alpha) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const DensityTable>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(alpha);
  if (it == registry.end()) {
    it = registry.emplace(alpha, std::make_shared<DensityTable>(alpha)).first;
  }
  return it->second;
}

}  // namespace sas

#pragma once

#include <memory>
#include <vector>

#include "sas/stable_density.hpp"

namespace sas {

// Fast evaluator for p_N and p_N' backed by a cubic Hermite interpolant of
// quadrature values on [0, 34] and the power tail series beyond, blended
// smoothly across [31, 33] so the composite is C^2 in u.  pdf_deriv() is the
// exact u-derivative of pdf(), which keeps dispersion-flow computations on
// top of this table internally consistent (finite differences in eta agree
// with the analytic derivative to truncation order).  Interpolation error is
// below ~1e-8 absolute; the direct StableDensity route stays authoritative
// for bound certification.
class DensityTable {
 public:
  static std::shared_ptr<const DensityTable> get(double alpha);

  explicit DensityTable(double alpha);

  double alpha() const { return alpha_; }
  double pdf(double u) const;
  double pdf_deriv(double u) const;
  double max_pdf() const { return pdf(0.0); }
  double scaled_pdf(double eta, double t) const;
  double dispersion_deriv(double eta, double t) const;
  const StableDensity& direct() const { return direct_; }

 private:
  double hermite(double a) const;
  double hermite_deriv(double a) const;
  double far_pdf(double a) const;        // log-log interpolant, a >= 30
  double far_pdf_deriv(double a) const;  // exact derivative of far_pdf

  double alpha_;
  bool cauchy_;
  const StableDensity& direct_;
  double h_ = 0.01;
  double umax_ = 34.0;
  double blend_lo_ = 31.0;
  double blend_hi_ = 33.0;
  std::vector<double> p_, dp_;
  // Far tail: cubic Hermite of ln p vs z = ln a on [ln 30, ln 1e300].  The
  // tail series is accurate there but costs ~30 exp/log per call; this brings
  // far evaluations to table speed while keeping pdf_deriv the exact
  // derivative of pdf.
  double zlo_ = 0.0;
  double zh_ = 0.05;
  std::vector<double> lp_, dlp_;  // ln p and d(ln p)/dz at the z nodes
};

}  // namespace sas

#pragma once

#include "json.hpp"
#include "sas/bounds.hpp"
#include "sas/quadrature.hpp"
#include "sas/source_dist.hpp"
#include "sas/stable_density.hpp"

namespace sas {

// Y = X + eta^{1/alpha} N with X ~ source, N standard symmetric alpha-stable.
struct MixtureModel {
  StableModel stable;
  SourceDistribution source;
  void validate() const;
};

struct EntropyReport {
  double h = 0.0;
  double err_est = 0.0;         // quadrature error + truncation bound
  double domain_used = 0.0;     // integration window [-Y, Y]
  double tail_mass_bound = 0.0; // bound on Pr(|Y| > Y)
  nlohmann::json to_json() const;
};

struct DeBruijnReport {
  double J_identity = 0.0;
  double J_fd = 0.0;
  double abs_diff = 0.0;
  double fd_step = 0.0;
  double mass_derivative = 0.0;  // integral of dq/deta, should vanish
  nlohmann::json to_json() const;
};

// q_eta(y) = E_X[p_eta(y - X)] and its dispersion derivative.
double mixture_pdf(const MixtureModel& model, double y);
double mixture_pdf_dispersion_deriv(const MixtureModel& model, double y);

// r_b(y) = E_X[s_b(y - X)], the integrable witness dominating |dq/deta|.
double r_b(const MixtureModel& model, const EnvelopeSpec& spec, double y);

EntropyReport entropy(const MixtureModel& model,
                      const quad::QuadratureConfig& cfg = {});

// -int (dq/deta) ln q dy with the same certified tail-window policy.
double entropy_dispersion_deriv_identity(const MixtureModel& model,
                                         const quad::QuadratureConfig& cfg = {});

// int (dq/deta) dy; vanishes because mass is conserved under the flow.
double mass_derivative_integral(const MixtureModel& model,
                                const quad::QuadratureConfig& cfg = {});

DeBruijnReport fractional_fisher_J(const MixtureModel& model,
                                   const quad::QuadratureConfig& cfg = {});

}  // namespace sas

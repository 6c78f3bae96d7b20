#include "sas/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sas/density_table.hpp"

namespace sas {

namespace {

bool heavy_tailed_source(const SourceDistribution& s) {
  return s.kind() == SourceDistribution::Kind::parametric &&
         s.family() == SourceDistribution::Family::cauchy;
}

// Convolution for heavy-tailed parametric sources.  The fixed source mesh
// cannot resolve the stable peak at x ~ y once |y| is large (its panels grow
// like 1 + x^2), so integrate density(x) * p_eta(y - x) on dyadic panel fans
// anchored at both the source mode and x = y.  The panel layout depends only
// on (y, source) -- never on eta -- so finite differences in eta stay
// consistent.
double convolve_heavy(const SourceDistribution& src, const DensityTable& tab,
                      double eta, double y, bool dderiv) {
  const double c0 = src.density_mode();
  const double w_src = 0.25 / std::max(1.0, src.density(c0));
  const double w_stb = 0.25;
  const double big = 1e6 * (1.0 + std::fabs(y) + std::fabs(c0)) + 1e7;
  const double mid = 0.5 * (c0 + y);

  std::vector<std::pair<double, double>> panels;
  panels.reserve(256);
  auto fan = [&panels](double c, double w0, double to) {
    double w = w0, x = c;
    if (to >= c) {
      while (x < to) {
        const double x2 = std::min(x + w, to);
        panels.emplace_back(x, x2);
        x = x2;
        w *= 2.0;
      }
    } else {
      while (x > to) {
        const double x2 = std::max(x - w, to);
        panels.emplace_back(x2, x);
        x = x2;
        w *= 2.0;
      }
    }
  };
  if (y >= c0) {
    fan(c0, w_src, c0 - big);
    fan(c0, w_src, mid);
    fan(y, w_stb, mid);
    fan(y, w_stb, y + big);
  } else {
    fan(c0, w_src, c0 + big);
    fan(c0, w_src, mid);
    fan(y, w_stb, mid);
    fan(y, w_stb, y - big);
  }

  quad::Accum acc;
  for (const auto& [a, b] : panels) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    for (int i = 0; i < 16; ++i) {
      const double x = m + h * quad::kGL16Nodes[i];
      const double g = dderiv ? tab.dispersion_deriv(eta, y - x)
                              : tab.scaled_pdf(eta, y - x);
      acc.add(h * quad::kGL16Weights[i] * src.density(x) * g);
    }
  }
  return acc.sum;
}

double q_eval(const SourceDistribution& src, const DensityTable& tab,
              double eta, double y, bool dderiv) {
  if (heavy_tailed_source(src)) {
    return convolve_heavy(src, tab, eta, y, dderiv);
  }
  return src.expect([&](double x) {
    return dderiv ? tab.dispersion_deriv(eta, y - x)
                  : tab.scaled_pdf(eta, y - x);
  });
}

// Shared tail machinery.  All windows start past y_valid, beyond which
//   q_eta(y)  <= q_up(y)   (split E_X at |x| = |y|/2)
//   q_eta(y)  >= b k~ / |y|^{1+a}  (the certified lower chain)
// so |ln q| <= Lq(y) = ln(|y|^{1+a} / (b k~)) once q_up < 1.
struct Ctx {
  double alpha = 0.0, eta = 0.0, b = 0.0;
  const MixtureModel* model = nullptr;
  std::shared_ptr<const DensityTable> table;
  TailConstants tc;
  double y_valid = 0.0;

  double q(double y) const { return q_eval(model->source, *table, eta, y, false); }
  double q_at(double eta2, double y) const {
    return q_eval(model->source, *table, eta2, y, false);
  }
  double qdot(double y) const {
    return q_eval(model->source, *table, eta, y, true);
  }
  double q_up(double y) const {
    const double a = std::fabs(y);
    double v = tc.k * eta * std::pow(2.0, 1.0 + alpha) /
               std::pow(a, 1.0 + alpha);
    if (!model->source.bounded_support()) {
      v += model->source.density_sup_beyond(0.5 * a);
    }
    return v;
  }
  double Lq(double y) const {
    return std::log(std::pow(std::fabs(y), 1.0 + alpha) / (b * tc.k_tilde));
  }
};

Ctx make_ctx(const MixtureModel& model) {
  Ctx c;
  c.alpha = model.stable.alpha;
  c.eta = model.stable.eta;
  c.b = c.eta / 1.5;  // eta sits inside (b, 2b)
  c.model = &model;
  c.table = DensityTable::get(c.alpha);
  c.tc = fitted_tail_constants(c.alpha);
  const double y_med = model.source.median_radius();
  const double t_thresh = c.tc.T * std::pow(2.0 * c.b, 1.0 / c.alpha);
  double y0 = std::max({10.0 * y_med, t_thresh + y_med, 2.0 * t_thresh, 1.0});
  if (model.source.bounded_support()) {
    y0 = std::max(y0, 2.0 * model.source.support_radius() + 1.0);
  }
  while (c.q_up(y0) > 0.9) y0 *= 2.0;
  c.y_valid = y0;
  return c;
}

// Smallest dyadic Y >= y_start whose tail integral of `bound` is <= target.
double grow_window(const std::function<double(double)>& bound, double y_start,
                   double target, double* tail_out) {
  double Y = y_start;
  for (int i = 0; i < 400; ++i) {
    auto r = quad::integrate_decaying(bound, Y, 0.01 * target);
    if (r.value + r.err <= target) {
      *tail_out = r.value + r.err;
      return Y;
    }
    Y *= 2.0;
  }
  throw quad::ConvergenceError("mixture: tail window did not close", HUGE_VAL);
}

double xlogx_neg(double q) {  // -q ln q with the q -> 0 limit
  return q > 1e-300 ? -q * std::log(q) : 0.0;
}

struct Windowed {
  double value = 0.0, err = 0.0, Y = 0.0, tail_bound = 0.0;
};

// Integrates f over [-Y, Y], Y grown until the certified tail remainder of
// |f| (given by tail_env on [Y, inf)) drops below target.
Windowed integrate_windowed(const std::function<double(double)>& f,
                            const std::function<double(double)>& tail_env,
                            double y_core, double target,
                            const quad::QuadratureConfig& cfg) {
  Windowed out;
  out.Y = grow_window(tail_env, 2.0 * y_core, target / 2.0, &out.tail_bound);
  auto core = quad::integrate_adaptive(f, -y_core, y_core, target / 4.0, 1e-12,
                                       cfg.max_panels);
  auto wp = quad::integrate_decaying(f, y_core, target / 8.0, out.Y);
  auto wm = quad::integrate_decaying([&](double y) { return f(-y); }, y_core,
                                     target / 8.0, out.Y);
  out.value = core.value + wp.value + wm.value;
  out.err = core.err + wp.err + wm.err + out.tail_bound;
  return out;
}

}  // namespace

void MixtureModel::validate() const {
  stable.validate();
  const double lm = source.log_moment();
  if (!std::isfinite(lm)) {
    throw std::invalid_argument(
        "MixtureModel: source log-moment is not finite");
  }
}

nlohmann::json EntropyReport::to_json() const {
  return {{"h", h},
          {"err_est", err_est},
          {"domain_used", domain_used},
          {"tail_mass_bound", tail_mass_bound}};
}

nlohmann::json DeBruijnReport::to_json() const {
  return {{"J_identity", J_identity},
          {"J_fd", J_fd},
          {"abs_diff", abs_diff},
          {"fd_step", fd_step},
          {"mass_derivative", mass_derivative}};
}

double mixture_pdf(const MixtureModel& model, double y) {
  const auto table = DensityTable::get(model.stable.alpha);
  return q_eval(model.source, *table, model.stable.eta, y, false);
}

double mixture_pdf_dispersion_deriv(const MixtureModel& model, double y) {
  const auto table = DensityTable::get(model.stable.alpha);
  return q_eval(model.source, *table, model.stable.eta, y, true);
}

double r_b(const MixtureModel& model, const EnvelopeSpec& spec, double y) {
  const double alpha = model.stable.alpha;
  return model.source.expect(
      [&](double x) { return envelope_value(spec, alpha, y - x); });
}

EntropyReport entropy(const MixtureModel& model,
                      const quad::QuadratureConfig& cfg) {
  model.validate();
  cfg.validate();
  const Ctx c = make_ctx(model);
  const double target = std::max(cfg.abs_tol, 1e-9);

  auto f = [&](double y) { return xlogx_neg(c.q(y)); };
  auto env = [&](double y) { return c.q_up(y) * c.Lq(y); };
  const Windowed w = integrate_windowed(f, env, c.y_valid, target, cfg);

  EntropyReport rep;
  rep.h = w.value;
  rep.err_est = w.err;
  rep.domain_used = w.Y;
  auto mt = quad::integrate_decaying([&](double y) { return c.q_up(y); }, w.Y,
                                     1e-12);
  rep.tail_mass_bound = mt.value + mt.err;
  return rep;
}

namespace {

// Envelope context for integrals against dq/deta: |qdot(y)| <= r_up(y) for
// |y| >= y_valid_J (split E_X at |x| = |y|/2 and use s_b <= C k / |t|^{1+a}
// past t0, plus the density-sup term for unbounded sources).
struct JCtx {
  Ctx c;
  EnvelopeSpec spec;
  double S_b = 0.0;
  double y_valid_J = 0.0;

  double r_up(double y) const {
    const double a = std::fabs(y);
    double v = spec.C * c.tc.k * std::pow(2.0, 1.0 + c.alpha) /
               std::pow(a, 1.0 + c.alpha);
    if (!c.model->source.bounded_support()) {
      v += c.model->source.density_sup_beyond(0.5 * a) * S_b;
    }
    return v;
  }
};

JCtx make_jctx(const MixtureModel& model) {
  JCtx j;
  j.c = make_ctx(model);
  j.spec = build_envelope(j.c.alpha, DispersionWindow{j.c.b});
  j.S_b = envelope_integrals(j.spec, j.c.alpha).first;
  j.y_valid_J = std::max(j.c.y_valid, 2.0 * j.spec.t0);
  return j;
}

}  // namespace

double entropy_dispersion_deriv_identity(const MixtureModel& model,
                                         const quad::QuadratureConfig& cfg) {
  model.validate();
  cfg.validate();
  const JCtx j = make_jctx(model);
  const double target = std::max(cfg.abs_tol, 1e-9);

  auto f = [&](double y) {
    const double q = j.c.q(y);
    if (q <= 1e-300) return 0.0;
    return -j.c.qdot(y) * std::log(q);
  };
  auto env = [&](double y) { return j.r_up(y) * j.c.Lq(y); };
  return integrate_windowed(f, env, j.y_valid_J, target, cfg).value;
}

double mass_derivative_integral(const MixtureModel& model,
                                const quad::QuadratureConfig& cfg) {
  model.validate();
  cfg.validate();
  const JCtx j = make_jctx(model);
  const double target = std::max(cfg.abs_tol, 1e-9);
  auto f = [&](double y) { return j.c.qdot(y); };
  auto env = [&](double y) { return j.r_up(y); };
  return integrate_windowed(f, env, j.y_valid_J, target, cfg).value;
}

DeBruijnReport fractional_fisher_J(const MixtureModel& model,
                                   const quad::QuadratureConfig& cfg) {
  model.validate();
  cfg.validate();
  DeBruijnReport rep;
  rep.J_identity = entropy_dispersion_deriv_identity(model, cfg);
  rep.mass_derivative = mass_derivative_integral(model, cfg);

  // Finite-difference cross-check of dh/deta on a frozen mesh: the same
  // panelization is reused for every displaced eta so quadrature error varies
  // smoothly in eta and cancels in the central differences.
  const Ctx c = make_ctx(model);
  const double target = std::max(cfg.abs_tol, 1e-9);
  auto f_at = [&](double eta2, double y) { return xlogx_neg(c.q_at(eta2, y)); };
  auto env = [&](double y) { return c.q_up(y) * c.Lq(y); };
  double tail = 0.0;
  const double Y = grow_window(env, 2.0 * c.y_valid, target / 2.0, &tail);

  quad::Partition core;
  quad::integrate_adaptive_partition([&](double y) { return f_at(c.eta, y); },
                                     -c.y_valid, c.y_valid, target / 4.0,
                                     1e-12, cfg.max_panels, &core);
  quad::Partition wing;  // dyadic cells on [y_valid, Y], 8 subcells each
  wing.edges.push_back(c.y_valid);
  for (double a = c.y_valid; a < Y;) {
    const double b = std::min(2.0 * a, Y);
    for (int s = 1; s <= 8; ++s) {
      wing.edges.push_back(a + (b - a) * s / 8.0);
    }
    a = b;
  }
  auto h_at = [&](double eta2) {
    auto fc = [&](double y) { return f_at(eta2, y); };
    auto fp = quad::integrate_on(wing, fc);
    auto fm = quad::integrate_on(wing, [&](double y) { return fc(-y); });
    return quad::integrate_on(core, fc).value + fp.value + fm.value;
  };

  const double d = 1e-4 * c.eta;
  const double D1 = (h_at(c.eta + d) - h_at(c.eta - d)) / (2.0 * d);
  const double D2 =
      (h_at(c.eta + 0.5 * d) - h_at(c.eta - 0.5 * d)) / d;
  rep.J_fd = (4.0 * D2 - D1) / 3.0;
  rep.fd_step = d;
  rep.abs_diff = std::fabs(rep.J_identity - rep.J_fd);
  return rep;
}

}  // namespace sas

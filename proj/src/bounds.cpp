#include "sas/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "sas/density_table.hpp"
#include "sas/quadrature.hpp"
#include "sas/specfun.hpp"

namespace sas {

namespace {

constexpr double kSafety = 0.05;       // inflation/deflation on fitted constants
constexpr double kRatioMargin = 1.1;   // (y + y~)/y bound for y >= 10 y~
constexpr int kFitPoints = 200;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

void DispersionWindow::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::invalid_argument("DispersionWindow: b must be positive");
  }
}

nlohmann::json TailConstants::to_json() const {
  return {{"k", k},       {"kappa_1", kappa_1}, {"K", K},
          {"T", T},       {"k_tilde", k_tilde}, {"u_lo", u_lo},
          {"u_hi", u_hi}};
}

nlohmann::json EnvelopeSpec::to_json() const {
  return {{"A", A},   {"B", B},           {"C", C},
          {"t0", t0}, {"b", window.b},    {"tail", tail.to_json()}};
}

nlohmann::json CertificateReport::to_json() const {
  return {{"bound_id", bound_id},
          {"grid_spec", grid_spec},
          {"slack_min", slack_min},
          {"argmax_point", {argmax_point[0], argmax_point[1]}},
          {"constants_used", constants_used},
          {"pass", pass}};
}

TailConstants fit_tail_constants(double alpha, double u_lo, double u_hi) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("fit_tail_constants: alpha must be in (0,2)");
  }
  if (!(u_lo > 0.0 && u_lo < u_hi)) {
    throw std::invalid_argument("fit_tail_constants: need 0 < u_lo < u_hi");
  }
  const StableDensity& ev = stable_evaluator(alpha);
  double prod_max = 0.0, prod_min = HUGE_VAL, dprod_max = 0.0;
  const double lr = std::log(u_hi / u_lo);
  for (int i = 0; i < kFitPoints; ++i) {
    const double u = u_lo * std::exp(lr * i / (kFitPoints - 1));
    const double p = ev.pdf(u);
    const double dp = std::fabs(ev.deriv(1, u));
    const double prod = p * std::pow(u, 1.0 + alpha);
    const double dprod = dp * std::pow(u, 2.0 + alpha);
    if (!(prod > 0.0) || !std::isfinite(prod)) {
      throw std::runtime_error(
          "fit_tail_constants: density underflow on the fit window; widen or "
          "lower the window");
    }
    prod_max = std::max(prod_max, prod);
    prod_min = std::min(prod_min, prod);
    dprod_max = std::max(dprod_max, dprod);
  }
  TailConstants tc;
  tc.k = (1.0 + kSafety) * prod_max;
  tc.K = (1.0 - kSafety) * prod_min;
  tc.kappa_1 = (1.0 + kSafety) * dprod_max;
  tc.T = u_lo;
  tc.k_tilde = tc.K / (2.0 * std::pow(2.0, 1.0 / alpha) *
                       std::pow(kRatioMargin, 1.0 + alpha));
  tc.u_lo = u_lo;
  tc.u_hi = u_hi;
  return tc;
}

const TailConstants& fitted_tail_constants(double alpha) {
  static std::mutex mu;
  static std::map<double, TailConstants> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(alpha);
  if (it == cache.end()) {
    it = cache.emplace(alpha, fit_tail_constants(alpha)).first;
  }
  return it->second;
}

EnvelopeSpec build_envelope(double alpha, DispersionWindow window, double t0) {
  window.validate();
  const TailConstants& tc = fitted_tail_constants(alpha);
  const StableDensity& ev = stable_evaluator(alpha);
  const double b = window.b;
  // |t| >= t0 must imply both |t| >= T (density lower bound) and
  // |t|/eta^{1/alpha} >= T for every eta < 2b (tail upper bounds), and the
  // crossover must sit past the series switch so tail integrals stay on the
  // series route.
  const double t0_min =
      std::max({tc.T, tc.T * std::pow(2.0 * b, 1.0 / alpha),
                ev.config().tail_switch_radius});
  if (t0 <= 0.0) {
    t0 = t0_min;
  } else if (t0 < t0_min * (1.0 - 1e-12)) {
    throw std::invalid_argument(
        "build_envelope: t0 is inside the tail-fit thresholds (need t0 >= " +
        fmt(t0_min) + ")");
  }
  EnvelopeSpec spec;
  spec.A = (1.0 / alpha) * std::pow(b, -1.0 - 1.0 / alpha) * ev.pdf(0.0);
  spec.B = (1.0 / (M_PI * alpha * alpha)) * std::pow(b, -1.0 - 2.0 / alpha) *
           specfun::gamma_fn(2.0 / alpha);
  spec.C = (tc.k + tc.kappa_1) / (alpha * tc.K);
  spec.t0 = t0;
  spec.window = window;
  spec.tail = tc;
  return spec;
}

double envelope_value(const EnvelopeSpec& spec, double alpha, double t) {
  const double a = std::fabs(t);
  if (a <= spec.t0) return spec.A + spec.B * a;
  return spec.C * DensityTable::get(alpha)->pdf(a);
}

CertificateReport certify_domination(double alpha, const EnvelopeSpec& spec,
                                     const std::vector<double>& eta_grid,
                                     const std::vector<double>& t_grid) {
  const auto table = DensityTable::get(alpha);
  CertificateReport rep;
  rep.bound_id = "eq:deff";
  {
    std::ostringstream os;
    os << "eta[" << eta_grid.size() << "]x t[" << t_grid.size() << "]";
    rep.grid_spec = os.str();
  }
  double slack_min = HUGE_VAL;
  for (double eta : eta_grid) {
    if (!(eta > spec.window.lo() && eta < spec.window.hi())) {
      throw std::invalid_argument(
          "certify_domination: eta grid leaves the window (b, 2b)");
    }
    for (double t : t_grid) {
      const double lhs = std::fabs(table->dispersion_deriv(eta, t));
      const double env = envelope_value(spec, alpha, t);
      const double slack = env > 0.0 ? 1.0 - lhs / env : -HUGE_VAL;
      if (slack < slack_min) {
        slack_min = slack;
        rep.argmax_point = {eta, t};
      }
    }
  }
  rep.slack_min = slack_min;
  rep.constants_used = spec.to_json();
  rep.pass = slack_min >= -1e-9;
  return rep;
}

std::pair<double, double> envelope_integrals(const EnvelopeSpec& spec,
                                             double alpha) {
  const StableDensity& ev = stable_evaluator(alpha);
  const double t0 = spec.t0;
  const double S_central = 2.0 * (spec.A * t0 + 0.5 * spec.B * t0 * t0);
  const double S_tail = spec.C * ev.tail_mass_beyond(t0);

  auto core = quad::integrate_adaptive(
      [&](double t) { return (spec.A + spec.B * t) * std::log1p(t); }, 0.0, t0,
      1e-12 * (1.0 + S_central), 1e-12);
  auto tail = quad::integrate_decaying(
      [&](double t) { return std::log1p(t) * ev.pdf(t); }, t0,
      1e-13 * (1.0 + S_tail));
  const double L = 2.0 * (core.value + spec.C * tail.value);
  return {S_central + S_tail, L};
}

CertificateReport q_lower_bound_check(double alpha, DispersionWindow window,
                                      const SourceDistribution& source,
                                      const std::vector<double>& y_grid) {
  window.validate();
  const TailConstants& tc = fitted_tail_constants(alpha);
  const auto table = DensityTable::get(alpha);
  const double b = window.b;
  const double y_med = median_radius(source);
  const double y_min = std::max(10.0 * y_med,
                                tc.T * std::pow(2.0 * b, 1.0 / alpha) + y_med);
  const auto etas = window_eta_grid(window);

  CertificateReport rep;
  rep.bound_id = "eq:qlower";
  {
    std::ostringstream os;
    os << "eta[" << etas.size() << "]x y[" << y_grid.size() << "]>=";
    os << fmt(y_min);
    rep.grid_spec = os.str();
  }
  double slack_min = HUGE_VAL;
  std::size_t used = 0;
  for (double eta : etas) {
    for (double y : y_grid) {
      if (std::fabs(y) < y_min) continue;
      ++used;
      const double q = expect_over_source(
          source, [&](double x) { return table->scaled_pdf(eta, y - x); });
      const double lower =
          b * tc.k_tilde / std::pow(std::fabs(y), 1.0 + alpha);
      const double slack = q / lower - 1.0;
      if (slack < slack_min) {
        slack_min = slack;
        rep.argmax_point = {eta, y};
      }
    }
  }
  if (used == 0) {
    throw std::invalid_argument(
        "q_lower_bound_check: every grid point is below the validity "
        "threshold y_min = " +
        fmt(y_min));
  }
  rep.slack_min = slack_min;
  rep.constants_used = {{"b", b},
                        {"k_tilde", tc.k_tilde},
                        {"K", tc.K},
                        {"T", tc.T},
                        {"y_min", y_min},
                        {"median_radius", y_med}};
  rep.pass = slack_min >= 0.0;
  return rep;
}

std::vector<double> domination_t_grid() {
  std::vector<double> pos;
  for (double t = 200.0;;) {  // log part, built descending then mirrored
    pos.push_back(t);
    if (t >= 1e4) break;
    t *= std::pow(1e4 / 200.0, 1.0 / 100.0);
    if (t > 1e4) t = 1e4;
  }
  std::vector<double> grid;
  grid.reserve(2 * pos.size() + 4001);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
  for (int i = -1999; i <= 1999; ++i) grid.push_back(i * 0.1);
  for (double t : pos) grid.push_back(t);
  return grid;
}

std::vector<double> window_eta_grid(DispersionWindow window, int points) {
  window.validate();
  if (points < 1) throw std::invalid_argument("window_eta_grid: points >= 1");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    g[i] = window.b * (1.0 + double(i + 1) / (points + 1));
  }
  return g;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && lo < hi) || points < 2) {
    throw std::invalid_argument("log_grid: need 0 < lo < hi and points >= 2");
  }
  std::vector<double> g(points);
  const double lr = std::log(hi / lo);
  for (int i = 0; i < points; ++i) {
    g[i] = lo * std::exp(lr * i / (points - 1));
  }
  return g;
}

}  // namespace sas

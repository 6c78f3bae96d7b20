// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit on any
// failure.  Each criterion is independent and timed.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sas/bounds.hpp"
#include "sas/density_table.hpp"
#include "sas/mc.hpp"
#include "sas/mixture.hpp"
#include "sas/quadrature.hpp"
#include "sas/source_dist.hpp"
#include "sas/specfun.hpp"
#include "sas/stable_density.hpp"

using namespace sas;

namespace {

int g_failures = 0;
std::string g_detail;

void criterion(int id, const char* name, const std::function<bool()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  g_detail.clear();
  try {
    ok = body();
  } catch (const std::exception& e) {
    g_detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("criterion %2d [%s]: %s (%.1f s)%s%s\n", id, name,
              ok ? "PASS" : "FAIL", secs, g_detail.empty() ? "" : " -- ",
              g_detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool fail(std::string why) {
  g_detail = std::move(why);
  return false;
}

const std::vector<double> kAlphaGrid{0.5, 0.8, 1.0, 1.2, 1.5, 1.9};

std::vector<SourceDistribution> test_sources() {
  return {SourceDistribution::atoms({{0.0, 1.0}}),
          SourceDistribution::atoms({{-1.0, 0.5}, {1.0, 0.5}}),
          SourceDistribution::gaussian(0.0, 1.0),
          SourceDistribution::sample(mc::sample_stable(1.0, 100, 12345))};
}

double g_min_J = 1e300;  // tracked across criteria 1 and 7, checked in 11

bool c1_cauchy_anchors() {
  for (double u = -50.0; u <= 50.0 + 1e-12; u += 0.01) {
    const double exact = 1.0 / (M_PI * (1.0 + u * u));
    if (std::fabs(stable_pdf(StableModel{1.0, 1.0}, u) - exact) > 1e-9) {
      return fail("pdf mismatch at u=" + std::to_string(u));
    }
  }
  auto atom = SourceDistribution::atoms({{0.0, 1.0}});
  for (double g : {0.5, 1.0, 2.0, 5.0}) {
    MixtureModel m{{1.0, g}, atom};
    const double h = entropy(m).h;
    if (std::fabs(h - std::log(4.0 * M_PI * g)) > 1e-6) {
      return fail("entropy mismatch at gamma=" + std::to_string(g));
    }
    auto rep = fractional_fisher_J(m);
    g_min_J = std::min(g_min_J, rep.J_identity);
    if (std::fabs(rep.J_identity - 1.0 / g) > 1e-4) {
      return fail("J mismatch at gamma=" + std::to_string(g));
    }
  }
  return true;
}

bool c2_normalization() {
  for (double alpha : kAlphaGrid) {
    const double m = stable_evaluator(alpha).total_mass();
    if (std::fabs(m - 1.0) > 1e-6) {
      return fail("alpha=" + std::to_string(alpha) +
                  " mass=" + std::to_string(m));
    }
  }
  return true;
}

bool c3_derivative_bounds() {
  for (double alpha : kAlphaGrid) {
    const auto& d = stable_evaluator(alpha);
    for (int n = 0; n <= 3; ++n) {
      const double bound = specfun::global_deriv_bound(alpha, n);
      double mx = 0.0;
      for (double u = 0.0; u <= 50.0 + 1e-12; u += 0.01) {
        mx = std::max(mx, std::fabs(d.deriv(n, u)));
      }
      if (mx > bound * (1.0 + 1e-9)) {
        return fail("alpha=" + std::to_string(alpha) + " n=" +
                    std::to_string(n) + " max=" + std::to_string(mx) +
                    " bound=" + std::to_string(bound));
      }
    }
  }
  return true;
}

bool c4_tail_exponents() {
  for (double alpha : {0.5, 1.0, 1.5}) {
    for (int n : {0, 1}) {
      const auto r = tail_asymptote(alpha, n, 200.0, 2000.0);
      const double want = -(n + alpha + 1.0);
      if (std::fabs(r.slope - want) > 0.05) {
        return fail("alpha=" + std::to_string(alpha) + " n=" +
                    std::to_string(n) + " slope=" + std::to_string(r.slope));
      }
    }
  }
  return true;
}

bool c5_envelope_domination() {
  const auto ts = domination_t_grid();
  for (double alpha : {0.8, 1.0, 1.5}) {
    for (double b : {0.25, 0.5, 1.0}) {
      const DispersionWindow w{b};
      const auto spec = build_envelope(alpha, w);
      const auto rep =
          certify_domination(alpha, spec, window_eta_grid(w, 8), ts);
      if (!rep.pass) {
        return fail("alpha=" + std::to_string(alpha) + " b=" +
                    std::to_string(b) + " slack=" +
                    std::to_string(rep.slack_min));
      }
    }
  }
  return true;
}

bool c6_interchange() {
  const double etas[4] = {0.5, 0.75, 1.5, 3.0};
  for (auto& src : test_sources()) {
    for (double eta : etas) {
      for (int i = 0; i <= 20; ++i) {
        const double y = -10.0 + i;
        MixtureModel m{{1.2, eta}, src};
        const double d = mixture_pdf_dispersion_deriv(m, y);
        const double h = 1e-5 * eta;
        MixtureModel up{{1.2, eta + h}, src}, dn{{1.2, eta - h}, src};
        const double fd =
            (mixture_pdf(up, y) - mixture_pdf(dn, y)) / (2.0 * h);
        if (std::fabs(d - fd) > std::max(1e-8, 1e-5 * std::fabs(d))) {
          return fail("eta=" + std::to_string(eta) + " y=" +
                      std::to_string(y) + " diff=" +
                      std::to_string(std::fabs(d - fd)));
        }
      }
    }
  }
  return true;
}

bool c7_debruijn_consistency() {
  for (double alpha : {0.8, 1.0, 1.5}) {
    for (double eta : {0.5, 1.0, 2.0}) {
      for (auto& src : test_sources()) {
        MixtureModel m{{alpha, eta}, src};
        const auto rep = fractional_fisher_J(m);
        g_min_J = std::min(g_min_J, rep.J_identity);
        if (rep.abs_diff > std::max(1e-4, 1e-3 * std::fabs(rep.J_identity))) {
          return fail("alpha=" + std::to_string(alpha) + " eta=" +
                      std::to_string(eta) + " diff=" +
                      std::to_string(rep.abs_diff));
        }
        if (std::fabs(rep.mass_derivative) > 1e-6) {
          return fail("mass derivative " +
                      std::to_string(rep.mass_derivative));
        }
      }
    }
  }
  return true;
}

bool c8_q_lower_bound() {
  for (double alpha : {0.8, 1.0, 1.5}) {
    for (double eta : {0.5, 1.0, 2.0}) {
      const DispersionWindow w{eta / 1.5};  // eta sits mid-window
      for (auto& src : test_sources()) {
        const double ym = median_radius(src);
        const auto rep = q_lower_bound_check(
            alpha, w, src, log_grid(10.0 * ym + 10.0, 1000.0, 60));
        if (!rep.pass || !(rep.slack_min > 0.0)) {
          return fail("alpha=" + std::to_string(alpha) + " eta=" +
                      std::to_string(eta) + " slack=" +
                      std::to_string(rep.slack_min));
        }
      }
    }
  }
  return true;
}

bool c9_integrability_chain() {
  const double alpha = 1.0;
  const auto spec = build_envelope(alpha, DispersionWindow{0.5});
  const auto [S, L] = envelope_integrals(spec, alpha);
  auto two = SourceDistribution::atoms({{-1.0, 0.5}, {1.0, 0.5}});
  auto cs = SourceDistribution::sample(mc::sample_stable(1.0, 100, 12345));
  for (auto& src : {two, cs}) {
    MixtureModel m{{alpha, 0.75}, src};
    auto core = quad::integrate_adaptive(
        [&](double y) { return std::log1p(std::fabs(y)) * r_b(m, spec, y); },
        -spec.t0, spec.t0, 1e-8);
    auto wing = quad::integrate_decaying(
        [&](double y) {
          return std::log1p(y) * (r_b(m, spec, y) + r_b(m, spec, -y));
        },
        spec.t0, 1e-8);
    const double lhs = core.value + wing.value;
    const double rhs = S * src.log_moment() + L;
    if (!(lhs < rhs)) {
      return fail("lhs=" + std::to_string(lhs) + " rhs=" +
                  std::to_string(rhs));
    }
  }
  return true;
}

bool c10_monte_carlo() {
  auto two = SourceDistribution::atoms({{-1.0, 0.5}, {1.0, 0.5}});
  for (double alpha : {0.8, 1.0, 1.5}) {
    MixtureModel m{{alpha, 1.0}, two};
    const auto det = entropy(m);
    const auto est = mc::mc_entropy(m, 1000000, 20240611);
    if (std::fabs(est.h - det.h) > 3.0 * est.std_err + det.err_est) {
      return fail("alpha=" + std::to_string(alpha) + " mc=" +
                  std::to_string(est.h) + " quad=" + std::to_string(det.h));
    }
  }
  // density consistency: histogram of draws vs integrated pdf
  for (double alpha : {0.8, 1.0, 1.5}) {
    const auto xs = mc::sample_stable(alpha, 1000000, 20240611);
    const int nb = 400;
    std::vector<double> obs(nb, 0.0);
    for (double x : xs) {
      if (x >= -20.0 && x < 20.0) obs[int((x + 20.0) / 0.1)] += 1.0;
    }
    const auto& d = stable_evaluator(alpha);
    int good = 0;
    for (int i = 0; i < nb; ++i) {
      const double a = -20.0 + 0.1 * i, b = a + 0.1;
      // Simpson on the bin
      const double mass =
          (0.1 / 6.0) * (d.pdf(a) + 4.0 * d.pdf(0.5 * (a + b)) + d.pdf(b));
      const double exp_cnt = 1e6 * mass;
      const double stat = (obs[i] - exp_cnt) * (obs[i] - exp_cnt) / exp_cnt;
      good += stat < 4.0;
    }
    if (good < int(0.95 * nb)) {
      return fail("alpha=" + std::to_string(alpha) + " good bins " +
                  std::to_string(good) + "/400");
    }
  }
  return true;
}

bool c11_entropy_monotone() {
  for (double alpha : {0.8, 1.0, 1.5}) {
    for (auto& src : test_sources()) {
      double prev_h = -1e300;
      for (double eta : {0.5, 1.0, 2.0, 4.0}) {
        const auto rep = entropy(MixtureModel{{alpha, eta}, src});
        if (!(rep.h > prev_h + 2.0 * rep.err_est)) {
          return fail("alpha=" + std::to_string(alpha) + " eta=" +
                      std::to_string(eta) + " h step " +
                      std::to_string(rep.h - prev_h));
        }
        prev_h = rep.h;
      }
    }
  }
  if (!(g_min_J >= -1e-6)) {
    return fail("min J " + std::to_string(g_min_J));
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "cauchy anchors", c1_cauchy_anchors);
  criterion(2, "normalization", c2_normalization);
  criterion(3, "derivative bounds", c3_derivative_bounds);
  criterion(4, "tail exponents", c4_tail_exponents);
  criterion(5, "envelope domination", c5_envelope_domination);
  criterion(6, "derivative interchange", c6_interchange);
  criterion(7, "de Bruijn consistency", c7_debruijn_consistency);
  criterion(8, "q lower bound", c8_q_lower_bound);
  criterion(9, "integrability chain", c9_integrability_chain);
  criterion(10, "Monte Carlo cross-check", c10_monte_carlo);
  criterion(11, "entropy monotonicity", c11_entropy_monotone);
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "sas/bounds.hpp"
#include "sas/specfun.hpp"

using namespace sas;

TEST_CASE("tail constants at alpha = 1 match the Cauchy closed forms") {
  // p(u) = 1/(pi u^2) (1 + u^-2)^-1, so u^2 p(u) -> 1/pi from below and
  // |p'(u)| u^3 -> 2/pi.  The fit inflates uppers by 5% and deflates lowers.
  const auto tc = fit_tail_constants(1.0);
  CHECK(tc.k == doctest::Approx(1.05 / M_PI).epsilon(1e-3));
  CHECK(tc.K == doctest::Approx(0.95 / M_PI).epsilon(1e-3));
  CHECK(tc.kappa_1 == doctest::Approx(1.05 * 2.0 / M_PI).epsilon(1e-3));
  CHECK(tc.K <= tc.k);
  CHECK(tc.T == tc.u_lo);
  CHECK(tc.k_tilde ==
        doctest::Approx(tc.K / (2.0 * 2.0 * std::pow(1.1, 2.0)))
            .epsilon(1e-12));
}

TEST_CASE("tail constants are insensitive to the fit window") {
  const auto a = fit_tail_constants(1.0, 50.0, 500.0);
  const auto b = fit_tail_constants(1.0, 100.0, 1000.0);
  CHECK(std::fabs(a.k - b.k) / a.k < 0.02);
  CHECK(std::fabs(a.K - b.K) / a.K < 0.02);
}

TEST_CASE("tail constant bounds actually hold on a fresh grid") {
  for (double alpha : {0.8, 1.5}) {
    const auto& tc = fitted_tail_constants(alpha);
    const auto& d = stable_evaluator(alpha);
    for (double u : log_grid(tc.u_lo, tc.u_hi, 57)) {
      const double pw = std::pow(u, 1.0 + alpha);
      CHECK(d.pdf(u) * pw <= tc.k);
      CHECK(d.pdf(u) * pw >= tc.K);
      CHECK(std::fabs(d.deriv(1, u)) * pw * u <= tc.kappa_1);
    }
  }
}

TEST_CASE("envelope coefficients reproduce their algebra") {
  // A = (1/alpha) b^{-1-1/alpha} p_N(0),
  // B = (1/(pi alpha^2)) b^{-1-2/alpha} Gamma(2/alpha)
  const double alpha = 1.0, b = 0.5;
  const auto spec = build_envelope(alpha, DispersionWindow{b});
  const double p0 = stable_evaluator(alpha).pdf(0.0);
  CHECK(spec.A ==
        doctest::Approx(std::pow(b, -2.0) * p0).epsilon(1e-12));
  CHECK(spec.B ==
        doctest::Approx(std::pow(b, -3.0) / M_PI).epsilon(1e-12));
  CHECK(spec.C == doctest::Approx((spec.tail.k + spec.tail.kappa_1) /
                                  (alpha * spec.tail.K))
                      .epsilon(1e-12));
  CHECK(spec.t0 >= spec.tail.T * std::pow(2.0 * b, 1.0 / alpha));
  // evenness
  CHECK(envelope_value(spec, alpha, -7.3) ==
        doctest::Approx(envelope_value(spec, alpha, 7.3)));
  CHECK(envelope_value(spec, alpha, 0.0) == doctest::Approx(spec.A));
}

TEST_CASE("explicit t0 below the admissible minimum is rejected") {
  CHECK_THROWS_AS(build_envelope(1.0, DispersionWindow{0.5}, 1.0),
                  std::invalid_argument);
  // a generous explicit t0 is accepted and used
  const auto spec = build_envelope(1.0, DispersionWindow{0.5}, 120.0);
  CHECK(spec.t0 == doctest::Approx(120.0));
}

TEST_CASE("domination certificate on a small grid") {
  const double alpha = 1.2;
  const DispersionWindow w{0.5};
  const auto spec = build_envelope(alpha, w);
  std::vector<double> ts;
  for (double t = -30.0; t <= 30.0; t += 0.25) ts.push_back(t);
  auto rep = certify_domination(alpha, spec, window_eta_grid(w, 4), ts);
  CHECK(rep.pass);
  CHECK(rep.slack_min >= -1e-9);
  CHECK(rep.bound_id == "eq:deff");

  // pointwise spot check at t = 0, eta mid-window
  const auto& d = stable_evaluator(alpha);
  CHECK(std::fabs(d.dispersion_deriv(0.75, 0.0)) <=
        envelope_value(spec, alpha, 0.0));

  // an eta outside (b, 2b) must be refused
  CHECK_THROWS_AS(certify_domination(alpha, spec, {2.5}, ts),
                  std::invalid_argument);
}

TEST_CASE("envelope integrals") {
  const double alpha = 1.0;
  auto spec = build_envelope(alpha, DispersionWindow{0.5});
  auto [S, L] = envelope_integrals(spec, alpha);
  // central part contributes 2(A t0 + B t0^2/2) exactly
  const double central = 2.0 * (spec.A * spec.t0 +
                                0.5 * spec.B * spec.t0 * spec.t0);
  const double tail = S - central;
  CHECK(S > central);
  CHECK(L > 0.0);
  // tail part scales linearly in C
  auto spec2 = spec;
  spec2.C *= 0.5;
  auto [S2, L2] = envelope_integrals(spec2, alpha);
  CHECK(S2 - central == doctest::Approx(0.5 * tail).epsilon(1e-8));
  CHECK(L2 < L);
}

TEST_CASE("mixture lower bound certificate for a point mass source") {
  // X = 0: q_eta(y) = p_eta(y), and the claimed floor is
  // k_tilde * b / |y|^{1+alpha}; at alpha = 1 the slack has a closed form.
  const double alpha = 1.0;
  const DispersionWindow w{0.5};
  auto src = SourceDistribution::atoms({{0.0, 1.0}});
  auto rep = q_lower_bound_check(alpha, w, src, log_grid(60.0, 1000.0, 80));
  CHECK(rep.pass);
  CHECK(rep.bound_id == "eq:qlower");
  CHECK(rep.slack_min >= 0.0);

  // all grid points below the validity threshold -> config error
  CHECK_THROWS_AS(q_lower_bound_check(alpha, w, src, {1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("report serialization carries the required fields") {
  const auto spec = build_envelope(1.0, DispersionWindow{0.5});
  std::vector<double> ts{-1.0, 0.0, 1.0, 80.0};
  auto rep = certify_domination(1.0, spec, {0.75}, ts);
  auto j = rep.to_json();
  CHECK(j.contains("bound_id"));
  CHECK(j.contains("grid_spec"));
  CHECK(j.contains("slack_min"));
  CHECK(j.contains("argmax_point"));
  CHECK(j.contains("constants_used"));
  CHECK(j.contains("pass"));
  CHECK(j["constants_used"].contains("A"));
  CHECK(j["constants_used"]["tail"].contains("k_tilde"));
}

TEST_CASE("grid helpers") {
  auto tg = domination_t_grid();
  CHECK(tg.size() > 4000);
  for (std::size_t i = 1; i < tg.size(); ++i) CHECK(tg[i] > tg[i - 1]);
  CHECK(tg.front() == doctest::Approx(-1e4));
  CHECK(tg.back() == doctest::Approx(1e4));

  auto eg = window_eta_grid(DispersionWindow{0.5}, 8);
  CHECK(eg.size() == 8);
  for (double e : eg) {
    CHECK(e > 0.5);
    CHECK(e < 1.0);
  }

  auto lg = log_grid(1.0, 100.0, 11);
  CHECK(lg.size() == 11);
  CHECK(lg.front() == doctest::Approx(1.0));
  CHECK(lg.back() == doctest::Approx(100.0));
  CHECK(lg[5] == doctest::Approx(10.0));

  CHECK_THROWS_AS(DispersionWindow{-1.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(fit_tail_constants(0.5, 500.0, 50.0), std::invalid_argument);
}

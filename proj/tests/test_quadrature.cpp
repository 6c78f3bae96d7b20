#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "sas/quadrature.hpp"

using namespace sas::quad;

TEST_CASE("gk15 integrates smooth polynomials exactly") {
  auto cubic = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
  auto r = gk15(cubic, -1.0, 2.0);
  CHECK(r.value == doctest::Approx(9.0 - 3.0 + 3.0).epsilon(1e-14));

  auto r10 = gk15([](double x) { return std::pow(x, 10); }, 0.0, 1.0);
  CHECK(r10.value == doctest::Approx(1.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("adaptive quadrature classic integrals") {
  auto s = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI,
                              1e-12);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.converged);

  // integrable endpoint singularity
  auto q = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); },
                              1e-30, 1.0, 1e-9, 1e-9, 200000);
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("GL16 nodes are ascending, weights symmetric and normalized") {
  double wsum = 0.0;
  for (int i = 0; i < 16; ++i) {
    wsum += kGL16Weights[i];
    if (i) CHECK(kGL16Nodes[i] > kGL16Nodes[i - 1]);
    CHECK(kGL16Weights[i] == doctest::Approx(kGL16Weights[15 - i]));
  }
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("decaying integrals over half lines") {
  auto e = integrate_decaying([](double x) { return std::exp(-x); }, 1.0,
                              1e-12);
  CHECK(e.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-11));

  auto p = integrate_decaying([](double x) { return 1.0 / (x * x); }, 1.0,
                              1e-11);
  CHECK(p.value == doctest::Approx(1.0).epsilon(1e-9));

  // upper cap restricts the domain
  auto c = integrate_decaying([](double x) { return std::exp(-x); }, 1.0,
                              1e-12, 3.0);
  CHECK(c.value ==
        doctest::Approx(std::exp(-1.0) - std::exp(-3.0)).epsilon(1e-11));
}

TEST_CASE("recorded partitions reproduce the adaptive result") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
  Partition part;
  auto a = integrate_adaptive_partition(f, -4.0, 4.0, 1e-12, 1e-12, 100000,
                                        &part);
  auto b = integrate_on(part, f);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-14));
  CHECK(part.edges.front() == -4.0);
  CHECK(part.edges.back() == 4.0);
  for (std::size_t i = 1; i < part.edges.size(); ++i) {
    CHECK(part.edges[i] > part.edges[i - 1]);
  }

  // nearby integrand on the frozen mesh: smooth perturbation stays close
  auto g = [](double x) { return std::exp(-x * x) * std::cos(3.000001 * x); };
  auto c = integrate_on(part, g);
  CHECK(std::fabs(c.value - b.value) < 1e-5);
}

TEST_CASE("failure modes") {
  // low-level routine reports non-convergence with the achieved error
  auto r = integrate_adaptive([](double x) { return std::sin(1.0 / x) / x; },
                              1e-9, 1.0, 1e-14, 1e-14, 32);
  CHECK_FALSE(r.converged);
  CHECK(r.err > 1e-14);
  QuadratureConfig cfg;
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_panels = 2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "sas/kernels.hpp"
#include "sas/mc.hpp"

using namespace sas::kernels;

namespace {

struct Table {
  std::vector<double> coeff;
  double node0[16];
  double step;
  double mass = 0.0;  // sum |coeff|, the natural scale for rounding error
};

Table random_table(std::size_t panels, std::uint64_t seed) {
  sas::mc::SplitMix64 rng{seed};
  Table t;
  t.step = 0.125;
  double prev = 0.0;
  for (int i = 0; i < 16; ++i) {
    prev += rng.uniform() * t.step / 16.0;
    t.node0[i] = prev;  // ascending inside [0, step]
  }
  t.coeff.resize(16 * panels);
  for (auto& c : t.coeff) {
    c = (rng.uniform() - 0.5) * std::exp(-6.0 * rng.uniform());
    t.mass += std::fabs(c);
  }
  return t;
}

}  // namespace

TEST_CASE("scalar kernel against a direct transcription") {
  const Table t = random_table(37, 101);
  for (double u : {0.0, 0.3, 2.0, -17.5, 55.0}) {
    double ref = 0.0;
    for (std::size_t j = 0; j < 37; ++j) {
      for (int i = 0; i < 16; ++i) {
        ref += t.coeff[16 * j + i] *
               std::cos((t.node0[i] + j * t.step) * u + 0.5);
      }
    }
    const double got =
        panel_cosine_sum_scalar(t.node0, t.step, 37, t.coeff.data(), u, 0.5);
    CHECK(got == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("simd kernel is equivalent to the scalar reference") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (std::size_t panels : {1u, 7u, 255u, 256u, 1000u, 4096u}) {
      const Table t = random_table(panels, seed * 1000 + panels);
      for (double u : {0.0, 1e-8, 0.9, 12.0, -63.9}) {
        for (double phase : {0.0, M_PI / 2, M_PI}) {
          const double a = panel_cosine_sum_scalar(t.node0, t.step, panels,
                                                   t.coeff.data(), u, phase);
          const double b = panel_cosine_sum_simd(t.node0, t.step, panels,
                                                 t.coeff.data(), u, phase);
          CHECK(std::fabs(a - b) <= 1e-12 * t.mass + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("runtime dispatch picks a working kernel") {
  const char* name = active_kernel_name();
  CHECK((std::strcmp(name, "simd") == 0 || std::strcmp(name, "scalar") == 0));
  const Table t = random_table(64, 7);
  const double a =
      active_kernel()(t.node0, t.step, 64, t.coeff.data(), 3.0, 0.0);
  const double b =
      panel_cosine_sum_scalar(t.node0, t.step, 64, t.coeff.data(), 3.0, 0.0);
  CHECK(std::fabs(a - b) <= 1e-12 * t.mass + 1e-15);
}

#include "sas/mc.hpp"

#include <cmath>
#include <stdexcept>

#include "sas/parallel.hpp"
#include "sas/quadrature.hpp"

namespace sas::mc {

double sample_one_stable(double alpha, SplitMix64& rng) {
  const double U = M_PI * (rng.uniform() - 0.5);
  if (alpha == 1.0) {
    return std::tan(U);
  }
  const double W = -std::log(rng.uniform());
  const double s = std::sin(alpha * U) /
                   std::pow(std::cos(U), 1.0 / alpha);
  return s * std::pow(std::cos(U - alpha * U) / W, (1.0 - alpha) / alpha);
}

double sample_one_source(const SourceDistribution& src, SplitMix64& rng) {
  using Kind = SourceDistribution::Kind;
  using Family = SourceDistribution::Family;
  const double u = rng.uniform();
  switch (src.kind()) {
    case Kind::atoms: {
      double cum = 0.0;
      double last = 0.0;
      for (const auto& [x, w] : src.atom_list()) {
        last = x;
        cum += w;
        if (u <= cum) return x;
      }
      return last;
    }
    case Kind::sample: {
      const auto& v = src.sample_values();
      const std::size_t i = std::min<std::size_t>(
          static_cast<std::size_t>(u * v.size()), v.size() - 1);
      return v[i];
    }
    case Kind::parametric:
      break;
  }
  if (src.family() == Family::gaussian) {
    const double u2 = rng.uniform();
    const double z = std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * u2);
    return src.param_a() + src.param_b() * z;
  }
  if (src.family() == Family::cauchy) {
    return src.param_a() + src.param_b() * std::tan(M_PI * (u - 0.5));
  }
  return src.param_a() + (src.param_b() - src.param_a()) * u;
}

std::vector<double> sample_stable(double alpha, std::size_t n,
                                  std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("sample_stable: alpha must be in (0,2)");
  }
  std::vector<double> out(n);
  SplitMix64 rng{seed};
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = sample_one_stable(alpha, rng);
  }
  return out;
}

nlohmann::json McEntropyResult::to_json() const {
  return {{"h", h}, {"std_err", std_err}, {"n", n}};
}

McEntropyResult mc_entropy(const MixtureModel& model, std::size_t n,
                           std::uint64_t seed) {
  model.validate();
  if (n == 0) {
    throw std::invalid_argument("mc_entropy: need n > 0");
  }
  constexpr std::size_t kStreams = 64;
  // Substream seeds drawn from a parent stream; sample i belongs to the fixed
  // block i * kStreams / n, so worker count cannot change the estimate.
  SplitMix64 parent{seed};
  std::uint64_t sub_seed[kStreams];
  for (auto& s : sub_seed) s = parent.next();

  const double alpha = model.stable.alpha;
  const double scale = std::pow(model.stable.eta, 1.0 / alpha);
  double sum[kStreams] = {}, sum2[kStreams] = {};

  parallel_for(kStreams, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::size_t lo = n * s / kStreams, hi = n * (s + 1) / kStreams;
      SplitMix64 rng{sub_seed[s]};
      quad::Accum a1, a2;
      for (std::size_t i = lo; i < hi; ++i) {
        const double x = sample_one_source(model.source, rng);
        const double y = x + scale * sample_one_stable(alpha, rng);
        const double q = mixture_pdf(model, y);
        const double v = q > 0.0 ? -std::log(q) : 700.0;  // q underflow guard
        a1.add(v);
        a2.add(v * v);
      }
      sum[s] = a1.sum;
      sum2[s] = a2.sum;
    }
  });

  quad::Accum t1, t2;
  for (std::size_t s = 0; s < kStreams; ++s) {
    t1.add(sum[s]);
    t2.add(sum2[s]);
  }
  McEntropyResult r;
  r.n = n;
  r.h = t1.sum / n;
  const double var = std::max(0.0, t2.sum / n - r.h * r.h);
  r.std_err = std::sqrt(var / n);
  return r;
}

}  // namespace sas::mc

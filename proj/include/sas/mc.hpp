#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "sas/mixture.hpp"

namespace sas::mc {

// splitmix64: tiny splittable PRNG with a bit-exact documented stream; the
// seed contract is part of the external interface.
struct SplitMix64 {
  std::uint64_t state = 0;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // (0, 1), 53-bit
    return (next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }
};

// One standard draw (Chambers-Mallows-Stuck).  The alpha = 1 branch consumes
// a single uniform and reduces to tan(U).
double sample_one_stable(double alpha, SplitMix64& rng);
double sample_one_source(const SourceDistribution& src, SplitMix64& rng);

std::vector<double> sample_stable(double alpha, std::size_t n,
                                  std::uint64_t seed);

struct McEntropyResult {
  double h = 0.0;
  double std_err = 0.0;
  std::size_t n = 0;
  nlohmann::json to_json() const;
};

// Plug-in estimator -(1/n) sum ln q(Y_i) with Y_i = X_i + eta^{1/alpha} N_i.
// The stream is split into 64 fixed substreams so the estimate is identical
// regardless of worker count.
McEntropyResult mc_entropy(const MixtureModel& model, std::size_t n,
                           std::uint64_t seed);

}  // namespace sas::mc

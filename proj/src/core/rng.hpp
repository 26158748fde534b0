#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace hmmforge {

using RngEngine = std::mt19937_64;

// Derives an independent stream seed from (seed, stream) via splitmix64,
// so sub-tasks (transition vs emission vs train vs val sampling) never share
// a generator state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + stream * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline RngEngine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return RngEngine(derive_seed(seed, stream));
}

// Inverse-CDF draw from a normalized weight vector.
inline int sample_categorical(RngEngine& rng, std::span<const double> probs) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) return static_cast<int>(k);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace hmmforge

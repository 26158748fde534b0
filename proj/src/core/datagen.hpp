#pragma once

#include <cstdint>

#include "core/hmm.hpp"

namespace hmmforge {

// Synthetic benchmark family: transition is a convex mix of a cyclic
// permutation and a temperature-softmax random stochastic matrix, emission is
// a temperature-softmax random stochastic matrix, pi is uniform.
struct SyntheticConfig {
  int d = 8;
  int m = 16;
  double lambda = 0.9;       // weight on the cyclic part
  double temp_trans = 0.1;   // softmax temperature for the random transition
  double temp_emis = 0.01;   // softmax temperature for the emission
  int n_train = 1000;
  int t = 256;
  double val_fraction = 0.10;
  std::uint64_t seed = 0;
};

void validate(const SyntheticConfig& cfg);

// Rows are softmax(g / temp) for i.i.d. standard-normal g.
Matrix random_stochastic_matrix(int rows, int cols, double temp, std::uint64_t seed);

// lambda * cyclic(i -> i+1 mod d) + (1 - lambda) * random_stochastic_matrix.
Matrix make_transition(int d, double lambda, double temp, std::uint64_t seed);

struct SyntheticInstance {
  HmmParams params;
  Dataset train;
  Dataset val;
};

// Builds the generator and samples train/validation sets from disjoint RNG
// streams. Validation size is round(val_fraction * n_train), at least 1.
SyntheticInstance make_instance(const SyntheticConfig& cfg);

}  // namespace hmmforge

#include "core/datagen.hpp"

#include <cmath>
#include <random>

#include "core/rng.hpp"

namespace hmmforge {

namespace {

// Stream ids for deriving independent RNG streams from one config seed.
enum Stream : std::uint64_t {
  kStreamTransition = 1,
  kStreamEmission = 2,
  kStreamTrain = 3,
  kStreamVal = 4,
};

}  // namespace

void validate(const SyntheticConfig& cfg) {
  if (cfg.d < 1 || cfg.m < 2) {
    throw Error(ErrorCode::InvalidArgument, "need d >= 1 and m >= 2");
  }
  if (cfg.lambda < 0.0 || cfg.lambda > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0,1]");
  }
  if (cfg.temp_trans <= 0.0 || cfg.temp_emis <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "temperatures must be positive");
  }
  if (cfg.val_fraction <= 0.0 || cfg.val_fraction >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "val_fraction must lie in (0,1)");
  }
  if (cfg.n_train < 1 || cfg.t < 1) {
    throw Error(ErrorCode::InvalidArgument, "n_train and t must be >= 1");
  }
}

Matrix random_stochastic_matrix(int rows, int cols, double temp, std::uint64_t seed) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be >= 1");
  }
  if (temp <= 0.0) throw Error(ErrorCode::InvalidArgument, "temperature must be > 0");
  RngEngine rng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    for (double& x : row) x = normal(rng) / temp;
    softmax_in_place(row);
  }
  return out;
}

Matrix make_transition(int d, double lambda, double temp, std::uint64_t seed) {
  Matrix random = random_stochastic_matrix(d, d, temp, seed);
  const auto n = static_cast<std::size_t>(d);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double cyclic = (j == (i + 1) % n) ? 1.0 : 0.0;
      out(i, j) = lambda * cyclic + (1.0 - lambda) * random(i, j);
    }
  }
  return out;
}

SyntheticInstance make_instance(const SyntheticConfig& cfg) {
  validate(cfg);
  SyntheticInstance out;
  out.params.d = cfg.d;
  out.params.m = cfg.m;
  out.params.pi.assign(static_cast<std::size_t>(cfg.d), 1.0 / cfg.d);
  out.params.trans = make_transition(cfg.d, cfg.lambda, cfg.temp_trans,
                                     derive_seed(cfg.seed, kStreamTransition));
  out.params.emis = random_stochastic_matrix(cfg.d, cfg.m, cfg.temp_emis,
                                             derive_seed(cfg.seed, kStreamEmission));
  validate(out.params);

  const int n_val =
      std::max(1, static_cast<int>(std::llround(cfg.val_fraction * cfg.n_train)));
  out.train = sample_sequences(out.params, cfg.n_train, cfg.t,
                               derive_seed(cfg.seed, kStreamTrain));
  out.val = sample_sequences(out.params, n_val, cfg.t, derive_seed(cfg.seed, kStreamVal));
  return out;
}

}  // namespace hmmforge

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/hmm.hpp"
#include "core/rng.hpp"

namespace hmmforge {

struct EmConfig {
  int max_iters = 20;
  int restarts = 5;
  std::uint64_t seed = 0;
  double ll_tolerance = 0.0;  // early stop on log-likelihood gain; 0 disables
};

// E-step sufficient statistics for one sequence (or an accumulation of
// several). gamma holds the per-step smoothed state posteriors of the last
// sequence processed; the *_sum fields are expected counts.
struct SmoothingStats {
  Matrix gamma;                  // T x d smoothed posteriors
  Matrix xi_sum;                 // d x d expected transition counts
  Matrix obs_sum;                // d x m expected emission counts
  std::vector<double> init_sum;  // expected initial-state occupancy
  double loglik = 0.0;
};

// Scaled forward-backward smoothing over one sequence.
SmoothingStats forward_backward(const HmmParams& params,
                                std::span<const std::int32_t> seq);

// One EM update over the whole dataset. Returns the re-estimated parameters
// and the log-likelihood of the INPUT parameters on the dataset. States with
// zero expected occupancy keep their previous row.
std::pair<HmmParams, double> em_step(const HmmParams& params, const Dataset& dataset);

// Full-support random parameters: every row is softmax of Normal(0,1) logits.
HmmParams random_params(int d, int m, RngEngine& rng);

struct EmFitReport {
  // loglik[r][i]: training log-likelihood of restart r's parameters entering
  // iteration i.
  std::vector<std::vector<double>> loglik;
  std::vector<double> val_loss;  // per restart
  int selected = -1;
};

// Multi-restart EM; the restart with the lowest validation cross-entropy
// (scored with the forward filter) wins.
std::pair<HmmParams, EmFitReport> fit_baum_welch(const Dataset& train, int d,
                                                 const EmConfig& cfg,
                                                 const Dataset& val);

}  // namespace hmmforge

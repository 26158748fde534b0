#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace hmmforge {

// Unnormalized-posterior sums below this trigger the flooring rule instead of
// a division by ~0; keeps the filter alive on observations a (possibly
// misspecified) model considers impossible.
inline constexpr double kUnderflowGuard = 1e-300;
inline constexpr double kPosteriorFloor = 1e-12;
// Probability clamp applied before log in the cross-entropy; only literal
// zeros are affected.
inline constexpr double kLogClamp = 1e-300;

// Discrete HMM: initial distribution pi, row-stochastic transition matrix
// trans (d x d) and emission matrix emis (d x m). States and observations are
// 0-based index ranges.
struct HmmParams {
  int d = 0;
  int m = 0;
  std::vector<double> pi;
  Matrix trans;
  Matrix emis;
};

// Throws Error{InvalidArgument} unless dimensions agree, d >= 1, m >= 2 and
// pi plus every row of trans/emis is stochastic within 1e-12.
void validate(const HmmParams& params);

// One slice of the filter recursion.
//   prior      mu_{t|t-1}, state distribution before seeing the observation
//   posterior  mu_t, state distribution after the correction step
//   likelihood e_t, per-state probability of the observation just consumed
//   prediction p_{t+1}, next-observation distribution
struct BeliefState {
  std::vector<double> prior;
  std::vector<double> posterior;
  std::vector<double> likelihood;
  std::vector<double> prediction;
};

struct Dataset {
  int m = 0;
  std::vector<std::vector<std::int32_t>> sequences;
  std::map<std::int32_t, std::string> glyphs;  // optional token id -> display glyph
};

void validate(const Dataset& dataset);

BeliefState filter_init(const HmmParams& params);

// Emission -> correction -> transition -> estimation. Returns the belief
// carried into the next step (its prior is mu_{t+1|t}).
BeliefState filter_step(const BeliefState& state, const HmmParams& params,
                        std::int32_t obs);

// Runs the filter over the whole sequence; output[t] is the next-observation
// distribution given seq[0..t].
std::vector<std::vector<double>> filter_run(const HmmParams& params,
                                            std::span<const std::int32_t> seq);

// Ancestral sampling of n sequences of length t; deterministic given seed.
Dataset sample_sequences(const HmmParams& params, int n, int t, std::uint64_t seed);

// Mean negative log-probability in nats of targets[t] under predictions[t].
// Zero probabilities are clamped at kLogClamp; clamped (when non-null) counts
// how many entries needed it.
double cross_entropy(const std::vector<std::vector<double>>& predictions,
                     std::span<const std::int32_t> targets,
                     std::size_t* clamped = nullptr);

// Per-sequence mean cross-entropy of the filter's one-step predictions,
// averaged over the dataset (targets are each sequence shifted by one).
double filter_loss(const HmmParams& params, const Dataset& dataset);

// Logit count of the softmax parameterization: d + d^2 + d*m.
std::int64_t param_count(int d, int m);

// Divides v by its sum; if the sum is below kUnderflowGuard, adds
// kPosteriorFloor to every entry first. Returns the normalizer actually used.
double floor_normalize(std::span<double> v);

}  // namespace hmmforge

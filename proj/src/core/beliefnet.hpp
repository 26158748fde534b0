#pragma once

#include <cstdint>
#include <vector>

#include "core/hmm.hpp"
#include "core/rng.hpp"

namespace hmmforge {

// Unconstrained logits behind the softmax parameterization; also used as the
// gradient/optimizer-moment container since the shapes coincide.
struct LogitParams {
  std::vector<double> pi;  // length d
  Matrix trans;            // d x d
  Matrix emis;             // d x m
  int d() const { return static_cast<int>(pi.size()); }
  int m() const { return static_cast<int>(emis.cols()); }
};

// Standard-normal logits give sharp enough initial rows to break the
// permutation symmetry of the filter likelihood; near-uniform starts stall in
// state-merged saddles.
inline constexpr double kInitStddev = 1.0;

LogitParams zeros_like(const LogitParams& shape);
LogitParams random_logits(int d, int m, double stddev, RngEngine& rng);

// Row-wise softmax of every logit block.
HmmParams to_probs(const LogitParams& logits);

// Bernoulli keep-masks (already scaled decisions, one row per step) for
// training-time dropout on the posterior before the transition step.
struct DropoutPlan {
  double rate = 0.0;
  Matrix keep;  // T x d of 0/1
};

DropoutPlan make_dropout_plan(double rate, int t, int d, RngEngine& rng);

// Forward intermediates needed by the adjoint pass.
struct Tape {
  HmmParams probs;
  std::vector<std::int32_t> seq;
  std::vector<std::vector<double>> priors;      // T+1 entries, priors[0] = pi
  std::vector<std::vector<double>> posteriors;  // correction output per step
  std::vector<double> correction_norms;
  std::vector<std::vector<double>> dropped;     // post-dropout posterior per step
  std::vector<double> dropout_norms;
  const DropoutPlan* dropout = nullptr;
  std::vector<std::vector<double>> predictions;
  double loss = 0.0;
};

struct ForwardResult {
  std::vector<std::vector<double>> predictions;
  double loss = 0.0;
  Tape tape;
};

// Filter pass plus autoregressive cross-entropy; predictions match
// filter_run(to_probs(logits), seq). Sequences need at least one target.
ForwardResult forward(const LogitParams& logits, std::span<const std::int32_t> seq,
                      const DropoutPlan* dropout = nullptr);

// Exact reverse-mode gradient of the recorded loss with respect to every
// logit, through the correction renormalization and the softmax maps.
LogitParams backward(const Tape& tape);

struct OptimizerState {
  LogitParams first_moment;
  LogitParams second_moment;
  long step_count = 0;
  double lr = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

OptimizerState make_optimizer(const LogitParams& shape, double lr, double weight_decay);

// Decoupled-weight-decay Adam update with bias correction. Non-finite
// gradient entries raise Error{Numeric, "gradient overflow"}.
void adamw_step(LogitParams& params, const LogitParams& grad, OptimizerState& opt);

struct TrainConfig {
  int batch_size = 10;
  int max_iters = 2000;
  double lr = 0.1;
  double dropout = 0.0;
  int val_every = 50;
  std::uint64_t seed = 0;
  double weight_decay = 0.01;
  bool cosine_lr = false;  // optional decay; constant schedule by default
  int patience = 0;        // early stop after this many non-improving validations; 0 disables
};

struct CurvePoint {
  int iteration = 0;
  double loss = 0.0;
};

struct TrainResult {
  HmmParams model;
  LogitParams logits;
  std::vector<CurvePoint> train_curve;
  std::vector<CurvePoint> val_curve;
};

// Mini-batch AdamW training of the logits (batches sampled uniformly with
// replacement); training loss recorded every iteration, validation loss every
// val_every iterations and at the last iteration. Deterministic given seed.
TrainResult train(const Dataset& dataset, int d, const TrainConfig& cfg,
                  const Dataset& val);

struct GridResult {
  TrainResult best;
  double lr = 0.0;
  double dropout = 0.0;
  std::vector<std::tuple<double, double, double>> runs;  // (lr, dropout, final val loss)
};

// One training run per (lr, dropout) pair; lowest final validation loss wins,
// ties broken by lower lr then lower dropout.
GridResult grid_search(const Dataset& dataset, int d,
                       std::span<const double> lrs, std::span<const double> dropouts,
                       const TrainConfig& base, const Dataset& val);

}  // namespace hmmforge

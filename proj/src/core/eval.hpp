#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/baum_welch.hpp"
#include "core/beliefnet.hpp"
#include "core/hmm.hpp"
#include "core/spectral.hpp"

namespace hmmforge {

// One-step-ahead predictor over a fixed vocabulary. predict returns, for each
// position t, the next-observation distribution given seq[0..t]; causality is
// part of the contract.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual int vocab_size() const = 0;
  virtual std::vector<std::vector<double>> predict(
      std::span<const std::int32_t> seq) const = 0;
};

class FilterPredictor final : public Predictor {
 public:
  explicit FilterPredictor(HmmParams params) : params_(std::move(params)) {}
  int vocab_size() const override { return params_.m; }
  std::vector<std::vector<double>> predict(
      std::span<const std::int32_t> seq) const override {
    return filter_run(params_, seq);
  }

 private:
  HmmParams params_;
};

class SpectralPredictor final : public Predictor {
 public:
  explicit SpectralPredictor(SpectralModel model) : model_(std::move(model)) {}
  int vocab_size() const override { return model_.m; }
  std::vector<std::vector<double>> predict(
      std::span<const std::int32_t> seq) const override {
    return spectral_predict(model_, seq);
  }

 private:
  SpectralModel model_;
};

class UniformPredictor final : public Predictor {
 public:
  explicit UniformPredictor(int m) : m_(m) {}
  int vocab_size() const override { return m_; }
  std::vector<std::vector<double>> predict(
      std::span<const std::int32_t> seq) const override {
    return std::vector<std::vector<double>>(
        seq.size(), std::vector<double>(static_cast<std::size_t>(m_), 1.0 / m_));
  }

 private:
  int m_;
};

// Mean over sequences of the per-sequence mean cross-entropy against the
// one-step targets.
double evaluate(const Predictor& predictor, const Dataset& val);

double perplexity(double loss_nats);

struct SweepRow {
  int candidate_d = 0;
  std::string method;
  double loss = 0.0;
  std::int64_t params = 0;
  double seconds = 0.0;
  std::string status = "ok";  // "ok", "rank deficiency", or another error text
};

struct SweepOptions {
  EmConfig em;
  TrainConfig beliefnet;
  const HmmParams* oracle = nullptr;  // generator parameters, when known
  int jobs = 1;
};

// One fit + evaluation per (method, candidate dimension); failures are
// recorded as status rows and the sweep continues. Methods: beliefnet,
// baumwelch, spectral, random, oracle.
std::vector<SweepRow> sweep(const Dataset& train, const Dataset& val,
                            const std::vector<std::string>& methods,
                            const std::vector<int>& candidate_dims,
                            std::uint64_t seed, const SweepOptions& options);

}  // namespace hmmforge

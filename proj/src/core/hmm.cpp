#include "core/hmm.hpp"

#include <cmath>

#include "core/rng.hpp"

namespace hmmforge {

namespace {

void check_stochastic(std::span<const double> row, const char* what) {
  double s = 0.0;
  for (double x : row) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + " has an entry outside [0,1]");
    }
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " does not sum to 1");
  }
}

}  // namespace

void validate(const HmmParams& params) {
  if (params.d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
  if (params.m < 2) throw Error(ErrorCode::InvalidArgument, "m must be >= 2");
  const auto d = static_cast<std::size_t>(params.d);
  const auto m = static_cast<std::size_t>(params.m);
  if (params.pi.size() != d || params.trans.rows() != d ||
      params.trans.cols() != d || params.emis.rows() != d ||
      params.emis.cols() != m) {
    throw Error(ErrorCode::InvalidArgument, "parameter shapes do not match d, m");
  }
  check_stochastic(params.pi, "pi");
  for (std::size_t i = 0; i < d; ++i) {
    check_stochastic(params.trans.row(i), "transition row");
    check_stochastic(params.emis.row(i), "emission row");
  }
}

void validate(const Dataset& dataset) {
  if (dataset.m < 1) throw Error(ErrorCode::InvalidArgument, "vocabulary size must be >= 1");
  if (dataset.sequences.empty()) {
    throw Error(ErrorCode::InvalidArgument, "dataset has no sequences");
  }
  for (const auto& seq : dataset.sequences) {
    if (seq.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence in dataset");
    for (std::int32_t z : seq) {
      if (z < 0 || z >= dataset.m) {
        throw Error(ErrorCode::InvalidArgument, "token id out of range");
      }
    }
  }
}

double floor_normalize(std::span<double> v) {
  double s = sum(v);
  if (s < kUnderflowGuard) {
    for (double& x : v) x += kPosteriorFloor;
    s = sum(v);
  }
  for (double& x : v) x /= s;
  return s;
}

BeliefState filter_init(const HmmParams& params) {
  BeliefState state;
  state.prior = params.pi;
  state.posterior.assign(params.pi.size(), 0.0);
  state.likelihood.assign(params.pi.size(), 0.0);
  state.prediction.assign(static_cast<std::size_t>(params.m), 0.0);
  return state;
}

BeliefState filter_step(const BeliefState& state, const HmmParams& params,
                        std::int32_t obs) {
  if (obs < 0 || obs >= params.m) {
    throw Error(ErrorCode::InvalidArgument, "observation out of range");
  }
  const auto d = static_cast<std::size_t>(params.d);

  BeliefState next;
  next.likelihood.resize(d);
  next.posterior.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    next.likelihood[i] = params.emis(i, static_cast<std::size_t>(obs));
    next.posterior[i] = next.likelihood[i] * state.prior[i];
  }
  floor_normalize(next.posterior);
  next.prior = left_multiply(next.posterior, params.trans);
  next.prediction = left_multiply(next.prior, params.emis);
  return next;
}

std::vector<std::vector<double>> filter_run(const HmmParams& params,
                                            std::span<const std::int32_t> seq) {
  if (seq.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence");
  std::vector<std::vector<double>> predictions;
  predictions.reserve(seq.size());
  BeliefState state = filter_init(params);
  for (std::int32_t z : seq) {
    state = filter_step(state, params, z);
    predictions.push_back(state.prediction);
  }
  return predictions;
}

Dataset sample_sequences(const HmmParams& params, int n, int t, std::uint64_t seed) {
  validate(params);
  if (n < 1 || t < 1) {
    throw Error(ErrorCode::InvalidArgument, "sequence count and length must be >= 1");
  }
  RngEngine rng = make_engine(seed);
  Dataset out;
  out.m = params.m;
  out.sequences.resize(static_cast<std::size_t>(n));
  for (auto& seq : out.sequences) {
    seq.resize(static_cast<std::size_t>(t));
    int state = sample_categorical(rng, params.pi);
    for (int step = 0; step < t; ++step) {
      seq[static_cast<std::size_t>(step)] =
          sample_categorical(rng, params.emis.row(static_cast<std::size_t>(state)));
      state = sample_categorical(rng, params.trans.row(static_cast<std::size_t>(state)));
    }
  }
  return out;
}

double cross_entropy(const std::vector<std::vector<double>>& predictions,
                     std::span<const std::int32_t> targets,
                     std::size_t* clamped) {
  if (predictions.size() != targets.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "predictions and targets differ in length");
  }
  if (targets.empty()) throw Error(ErrorCode::InvalidArgument, "no targets");
  double total = 0.0;
  std::size_t clamp_count = 0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    double p = predictions[t][static_cast<std::size_t>(targets[t])];
    if (p <= 0.0) {
      p = kLogClamp;
      ++clamp_count;
    }
    total -= std::log(p);
  }
  if (clamped != nullptr) *clamped = clamp_count;
  return total / static_cast<double>(targets.size());
}

double filter_loss(const HmmParams& params, const Dataset& dataset) {
  validate(dataset);
  if (dataset.m != params.m) {
    throw Error(ErrorCode::InvalidArgument, "model/dataset vocabulary mismatch");
  }
  double total = 0.0;
  for (const auto& seq : dataset.sequences) {
    if (seq.size() < 2) {
      throw Error(ErrorCode::InvalidArgument, "sequence too short to score");
    }
    auto preds = filter_run(params, seq);
    preds.pop_back();  // last prediction has no target
    total += cross_entropy(preds, std::span(seq).subspan(1));
  }
  return total / static_cast<double>(dataset.sequences.size());
}

std::int64_t param_count(int d, int m) {
  if (d < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "d, m must be >= 1");
  const auto dd = static_cast<std::int64_t>(d);
  const auto mm = static_cast<std::int64_t>(m);
  return dd + dd * dd + dd * mm;
}

}  // namespace hmmforge

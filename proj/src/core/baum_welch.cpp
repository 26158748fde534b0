#include "core/baum_welch.hpp"

#include <cmath>
#include <random>

namespace hmmforge {

SmoothingStats forward_backward(const HmmParams& params,
                                std::span<const std::int32_t> seq) {
  if (seq.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence");
  const auto d = static_cast<std::size_t>(params.d);
  const auto m = static_cast<std::size_t>(params.m);
  const std::size_t len = seq.size();
  for (std::int32_t z : seq) {
    if (z < 0 || z >= params.m) {
      throw Error(ErrorCode::InvalidArgument, "observation out of range");
    }
  }

  // Scaled forward pass; scale[t] is the per-step normalizer.
  Matrix alpha(len, d);
  std::vector<double> scale(len);
  {
    auto a0 = alpha.row(0);
    for (std::size_t i = 0; i < d; ++i) {
      a0[i] = params.pi[i] * params.emis(i, static_cast<std::size_t>(seq[0]));
    }
    scale[0] = floor_normalize(a0);
  }
  for (std::size_t t = 1; t < len; ++t) {
    auto prev = alpha.row(t - 1);
    auto cur = alpha.row(t);
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) acc += prev[i] * params.trans(i, j);
      cur[j] = acc * params.emis(j, static_cast<std::size_t>(seq[t]));
    }
    scale[t] = floor_normalize(cur);
  }

  // Scaled backward pass.
  Matrix beta(len, d, 0.0);
  for (std::size_t i = 0; i < d; ++i) beta(len - 1, i) = 1.0;
  for (std::size_t t = len - 1; t-- > 0;) {
    const auto next_obs = static_cast<std::size_t>(seq[t + 1]);
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        acc += params.trans(i, j) * params.emis(j, next_obs) * beta(t + 1, j);
      }
      beta(t, i) = acc / scale[t + 1];
    }
  }

  SmoothingStats stats;
  stats.gamma = Matrix(len, d);
  stats.xi_sum = Matrix(d, d, 0.0);
  stats.obs_sum = Matrix(d, m, 0.0);
  stats.init_sum.assign(d, 0.0);
  for (std::size_t t = 0; t < len; ++t) {
    auto g = stats.gamma.row(t);
    for (std::size_t i = 0; i < d; ++i) g[i] = alpha(t, i) * beta(t, i);
    floor_normalize(g);
    const auto obs = static_cast<std::size_t>(seq[t]);
    for (std::size_t i = 0; i < d; ++i) stats.obs_sum(i, obs) += g[i];
  }
  for (std::size_t i = 0; i < d; ++i) stats.init_sum[i] = stats.gamma(0, i);
  for (std::size_t t = 0; t + 1 < len; ++t) {
    const auto next_obs = static_cast<std::size_t>(seq[t + 1]);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        stats.xi_sum(i, j) += alpha(t, i) * params.trans(i, j) *
                              params.emis(j, next_obs) * beta(t + 1, j) /
                              scale[t + 1];
      }
    }
  }
  stats.loglik = 0.0;
  for (double c : scale) stats.loglik += std::log(c);
  return stats;
}

std::pair<HmmParams, double> em_step(const HmmParams& params, const Dataset& dataset) {
  validate(params);
  validate(dataset);
  if (dataset.m != params.m) {
    throw Error(ErrorCode::InvalidArgument, "model/dataset vocabulary mismatch");
  }
  const auto d = static_cast<std::size_t>(params.d);
  const auto m = static_cast<std::size_t>(params.m);

  Matrix xi_sum(d, d, 0.0);
  Matrix obs_sum(d, m, 0.0);
  std::vector<double> init_sum(d, 0.0);
  double loglik = 0.0;
  for (const auto& seq : dataset.sequences) {
    SmoothingStats stats = forward_backward(params, seq);
    loglik += stats.loglik;
    for (std::size_t i = 0; i < d; ++i) {
      init_sum[i] += stats.init_sum[i];
      for (std::size_t j = 0; j < d; ++j) xi_sum(i, j) += stats.xi_sum(i, j);
      for (std::size_t k = 0; k < m; ++k) obs_sum(i, k) += stats.obs_sum(i, k);
    }
  }

  HmmParams next = params;
  const double init_total = sum(init_sum);
  if (init_total > 0.0) {
    for (std::size_t i = 0; i < d; ++i) next.pi[i] = init_sum[i] / init_total;
  }
  for (std::size_t i = 0; i < d; ++i) {
    const double row_total = sum(xi_sum.row(i));
    if (row_total > 0.0) {
      for (std::size_t j = 0; j < d; ++j) next.trans(i, j) = xi_sum(i, j) / row_total;
    }
    const double obs_total = sum(obs_sum.row(i));
    if (obs_total > 0.0) {
      for (std::size_t k = 0; k < m; ++k) next.emis(i, k) = obs_sum(i, k) / obs_total;
    }
  }
  return {std::move(next), loglik};
}

HmmParams random_params(int d, int m, RngEngine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  HmmParams params;
  params.d = d;
  params.m = m;
  params.pi.resize(static_cast<std::size_t>(d));
  params.trans = Matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  params.emis = Matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(m));
  for (double& x : params.pi) x = normal(rng);
  softmax_in_place(params.pi);
  for (std::size_t i = 0; i < params.trans.rows(); ++i) {
    auto row = params.trans.row(i);
    for (double& x : row) x = normal(rng);
    softmax_in_place(row);
  }
  for (std::size_t i = 0; i < params.emis.rows(); ++i) {
    auto row = params.emis.row(i);
    for (double& x : row) x = normal(rng);
    softmax_in_place(row);
  }
  return params;
}

std::pair<HmmParams, EmFitReport> fit_baum_welch(const Dataset& train, int d,
                                                 const EmConfig& cfg,
                                                 const Dataset& val) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
  if (cfg.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  if (cfg.max_iters < 0) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 0");
  validate(train);
  validate(val);
  if (val.m != train.m) {
    throw Error(ErrorCode::InvalidArgument, "train/validation vocabulary mismatch");
  }

  EmFitReport report;
  report.loglik.resize(static_cast<std::size_t>(cfg.restarts));
  report.val_loss.resize(static_cast<std::size_t>(cfg.restarts));
  HmmParams best;
  double best_val = 0.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    RngEngine rng = make_engine(cfg.seed, static_cast<std::uint64_t>(r));
    HmmParams params = random_params(d, train.m, rng);
    auto& trajectory = report.loglik[static_cast<std::size_t>(r)];
    double prev_ll = 0.0;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      auto [next, ll] = em_step(params, train);
      trajectory.push_back(ll);
      params = std::move(next);
      if (cfg.ll_tolerance > 0.0 && iter > 0 && ll - prev_ll < cfg.ll_tolerance) break;
      prev_ll = ll;
    }
    const double val_loss = filter_loss(params, val);
    report.val_loss[static_cast<std::size_t>(r)] = val_loss;
    if (report.selected < 0 || val_loss < best_val) {
      report.selected = r;
      best_val = val_loss;
      best = std::move(params);
    }
  }
  return {std::move(best), std::move(report)};
}

}  // namespace hmmforge

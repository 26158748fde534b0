#include "core/beliefnet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hmmforge {

LogitParams zeros_like(const LogitParams& shape) {
  LogitParams out;
  out.pi.assign(shape.pi.size(), 0.0);
  out.trans = Matrix(shape.trans.rows(), shape.trans.cols(), 0.0);
  out.emis = Matrix(shape.emis.rows(), shape.emis.cols(), 0.0);
  return out;
}

LogitParams random_logits(int d, int m, double stddev, RngEngine& rng) {
  if (d < 1 || m < 2) throw Error(ErrorCode::InvalidArgument, "need d >= 1 and m >= 2");
  std::normal_distribution<double> normal(0.0, stddev);
  LogitParams out;
  out.pi.resize(static_cast<std::size_t>(d));
  out.trans = Matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  out.emis = Matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(m));
  for (double& x : out.pi) x = normal(rng);
  for (double& x : out.trans.data()) x = normal(rng);
  for (double& x : out.emis.data()) x = normal(rng);
  return out;
}

HmmParams to_probs(const LogitParams& logits) {
  HmmParams params;
  params.d = logits.d();
  params.m = logits.m();
  params.pi = softmax(logits.pi);
  params.trans = logits.trans;
  params.emis = logits.emis;
  for (std::size_t i = 0; i < params.trans.rows(); ++i) softmax_in_place(params.trans.row(i));
  for (std::size_t i = 0; i < params.emis.rows(); ++i) softmax_in_place(params.emis.row(i));
  return params;
}

DropoutPlan make_dropout_plan(double rate, int t, int d, RngEngine& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "dropout rate must lie in [0,1)");
  }
  DropoutPlan plan;
  plan.rate = rate;
  plan.keep = Matrix(static_cast<std::size_t>(t), static_cast<std::size_t>(d), 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double& x : plan.keep.data()) x = unit(rng) < rate ? 0.0 : 1.0;
  return plan;
}

ForwardResult forward(const LogitParams& logits, std::span<const std::int32_t> seq,
                      const DropoutPlan* dropout) {
  if (seq.size() < 2) throw Error(ErrorCode::InvalidArgument, "no prediction targets");
  ForwardResult result;
  Tape& tape = result.tape;
  tape.probs = to_probs(logits);
  tape.seq.assign(seq.begin(), seq.end());
  tape.dropout = dropout;

  const auto d = static_cast<std::size_t>(tape.probs.d);
  const std::size_t len = seq.size();
  const HmmParams& p = tape.probs;

  tape.priors.reserve(len + 1);
  tape.priors.push_back(p.pi);
  tape.posteriors.reserve(len);
  tape.correction_norms.reserve(len);
  tape.predictions.reserve(len);

  const std::size_t targets = len - 1;
  double loss = 0.0;
  for (std::size_t t = 0; t < len; ++t) {
    const std::int32_t z = seq[t];
    if (z < 0 || z >= p.m) {
      throw Error(ErrorCode::InvalidArgument, "observation out of range");
    }
    std::vector<double> post(d);
    const auto& prior = tape.priors.back();
    for (std::size_t i = 0; i < d; ++i) {
      post[i] = p.emis(i, static_cast<std::size_t>(z)) * prior[i];
    }
    tape.correction_norms.push_back(floor_normalize(post));
    tape.posteriors.push_back(post);

    const std::vector<double>* trans_in = &tape.posteriors.back();
    if (dropout != nullptr && dropout->rate > 0.0) {
      std::vector<double> kept(d);
      const double scale = 1.0 / (1.0 - dropout->rate);
      for (std::size_t i = 0; i < d; ++i) kept[i] = dropout->keep(t, i) * post[i] * scale;
      tape.dropout_norms.push_back(floor_normalize(kept));
      tape.dropped.push_back(std::move(kept));
      trans_in = &tape.dropped.back();
    }

    tape.priors.push_back(left_multiply(*trans_in, p.trans));
    tape.predictions.push_back(left_multiply(tape.priors.back(), p.emis));

    if (t + 1 < len) {
      double prob = tape.predictions.back()[static_cast<std::size_t>(seq[t + 1])];
      if (prob <= 0.0) prob = kLogClamp;
      loss -= std::log(prob);
    }
  }
  tape.loss = loss / static_cast<double>(targets);
  result.loss = tape.loss;
  result.predictions = tape.predictions;
  return result;
}

namespace {

// d logits / d probs pullback of one softmax row.
void softmax_pullback(std::span<const double> probs, std::span<const double> upstream,
                      std::span<double> out) {
  const double inner = dot(probs, upstream);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out[i] = probs[i] * (upstream[i] - inner);
  }
}

}  // namespace

LogitParams backward(const Tape& tape) {
  const HmmParams& p = tape.probs;
  const auto d = static_cast<std::size_t>(p.d);
  const std::size_t len = tape.seq.size();
  const double targets = static_cast<double>(len - 1);
  const bool with_dropout = tape.dropout != nullptr && tape.dropout->rate > 0.0;

  // Adjoints in probability space.
  std::vector<double> grad_pi(d, 0.0);
  Matrix grad_trans(d, d, 0.0);
  Matrix grad_emis(d, static_cast<std::size_t>(p.m), 0.0);

  std::vector<double> bar_prior(d, 0.0);  // adjoint of priors[t+1]
  std::vector<double> bar_post(d), bar_u(d);
  for (std::size_t t = len; t-- > 0;) {
    // Estimation: predictions[t] = priors[t+1] * emis; the loss touches only
    // the target entry, and only for steps that have a target.
    if (t + 1 < len) {
      const auto y = static_cast<std::size_t>(tape.seq[t + 1]);
      const double prob = tape.predictions[t][y];
      // Zero predictions were clamped to a constant in the forward pass and
      // therefore carry no gradient.
      if (prob > 0.0) {
        const double bar_pred = -1.0 / (targets * prob);
        const auto& next_prior = tape.priors[t + 1];
        for (std::size_t j = 0; j < d; ++j) {
          bar_prior[j] += p.emis(j, y) * bar_pred;
          grad_emis(j, y) += next_prior[j] * bar_pred;
        }
      }
    }

    // Transition: priors[t+1] = trans_in * trans.
    const std::vector<double>& trans_in =
        with_dropout ? tape.dropped[t] : tape.posteriors[t];
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      const auto trow = p.trans.row(i);
      for (std::size_t j = 0; j < d; ++j) {
        acc += trow[j] * bar_prior[j];
        grad_trans(i, j) += trans_in[i] * bar_prior[j];
      }
      bar_post[i] = acc;
    }

    if (with_dropout) {
      // Renormalization of the masked posterior, then the mask itself.
      const auto& dropped = tape.dropped[t];
      const double inner = dot(bar_post, dropped);
      const double scale = 1.0 / (1.0 - tape.dropout->rate);
      for (std::size_t i = 0; i < d; ++i) {
        const double bar_kept = (bar_post[i] - inner) / tape.dropout_norms[t];
        bar_post[i] = bar_kept * tape.dropout->keep(t, i) * scale;
      }
    }

    // Correction renormalization: posteriors[t] = u / sum(u).
    const auto& post = tape.posteriors[t];
    const double inner = dot(bar_post, post);
    for (std::size_t i = 0; i < d; ++i) {
      bar_u[i] = (bar_post[i] - inner) / tape.correction_norms[t];
    }

    // u = emis[:, z_t] .* priors[t]
    const auto z = static_cast<std::size_t>(tape.seq[t]);
    const auto& prior = tape.priors[t];
    for (std::size_t i = 0; i < d; ++i) {
      grad_emis(i, z) += bar_u[i] * prior[i];
      bar_prior[i] = bar_u[i] * p.emis(i, z);
    }
  }

  // bar_prior now holds the adjoint of priors[0] = pi; pull everything back
  // through the row softmaxes.
  LogitParams grad;
  grad.pi.resize(d);
  grad.trans = Matrix(d, d);
  grad.emis = Matrix(d, static_cast<std::size_t>(p.m));
  softmax_pullback(p.pi, bar_prior, grad.pi);
  for (std::size_t i = 0; i < d; ++i) {
    softmax_pullback(p.trans.row(i), grad_trans.row(i), grad.trans.row(i));
    softmax_pullback(p.emis.row(i), grad_emis.row(i), grad.emis.row(i));
  }
  return grad;
}

OptimizerState make_optimizer(const LogitParams& shape, double lr, double weight_decay) {
  OptimizerState opt;
  opt.first_moment = zeros_like(shape);
  opt.second_moment = zeros_like(shape);
  opt.lr = lr;
  opt.weight_decay = weight_decay;
  return opt;
}

namespace {

void adamw_block(std::span<double> theta, std::span<const double> grad,
                 std::span<double> m, std::span<double> v, const OptimizerState& opt,
                 double bias1, double bias2) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double g = grad[i];
    if (!std::isfinite(g)) throw Error(ErrorCode::Numeric, "gradient overflow");
    m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * g;
    v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * g * g;
    const double m_hat = m[i] / bias1;
    const double v_hat = v[i] / bias2;
    theta[i] -= opt.lr * (m_hat / (std::sqrt(v_hat) + opt.eps) +
                          opt.weight_decay * theta[i]);
  }
}

}  // namespace

void adamw_step(LogitParams& params, const LogitParams& grad, OptimizerState& opt) {
  if (grad.pi.size() != params.pi.size() ||
      grad.trans.data().size() != params.trans.data().size() ||
      grad.emis.data().size() != params.emis.data().size()) {
    throw Error(ErrorCode::InvalidArgument, "gradient shape mismatch");
  }
  ++opt.step_count;
  const double bias1 = 1.0 - std::pow(opt.beta1, static_cast<double>(opt.step_count));
  const double bias2 = 1.0 - std::pow(opt.beta2, static_cast<double>(opt.step_count));
  adamw_block(params.pi, grad.pi, opt.first_moment.pi, opt.second_moment.pi, opt,
              bias1, bias2);
  adamw_block(params.trans.data(), grad.trans.data(), opt.first_moment.trans.data(),
              opt.second_moment.trans.data(), opt, bias1, bias2);
  adamw_block(params.emis.data(), grad.emis.data(), opt.first_moment.emis.data(),
              opt.second_moment.emis.data(), opt, bias1, bias2);
}

namespace {

void accumulate(LogitParams& acc, const LogitParams& grad) {
  for (std::size_t i = 0; i < acc.pi.size(); ++i) acc.pi[i] += grad.pi[i];
  for (std::size_t i = 0; i < acc.trans.data().size(); ++i) {
    acc.trans.data()[i] += grad.trans.data()[i];
  }
  for (std::size_t i = 0; i < acc.emis.data().size(); ++i) {
    acc.emis.data()[i] += grad.emis.data()[i];
  }
}

void scale(LogitParams& g, double factor) {
  for (double& x : g.pi) x *= factor;
  for (double& x : g.trans.data()) x *= factor;
  for (double& x : g.emis.data()) x *= factor;
}

}  // namespace

TrainResult train(const Dataset& dataset, int d, const TrainConfig& cfg,
                  const Dataset& val) {
  validate(dataset);
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
  if (cfg.batch_size < 1) throw Error(ErrorCode::InvalidArgument, "batch_size must be >= 1");
  if (cfg.max_iters < 0) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 0");
  if (cfg.lr <= 0.0) throw Error(ErrorCode::InvalidArgument, "learning rate must be > 0");
  if (cfg.dropout < 0.0 || cfg.dropout >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "dropout must lie in [0,1)");
  }
  if (cfg.val_every < 1) throw Error(ErrorCode::InvalidArgument, "val_every must be >= 1");
  validate(val);
  if (val.m != dataset.m) {
    throw Error(ErrorCode::InvalidArgument, "train/validation vocabulary mismatch");
  }

  RngEngine init_rng = make_engine(cfg.seed, 0);
  RngEngine batch_rng = make_engine(cfg.seed, 1);
  RngEngine dropout_rng = make_engine(cfg.seed, 2);

  TrainResult result;
  result.logits = random_logits(d, dataset.m, kInitStddev, init_rng);
  OptimizerState opt = make_optimizer(result.logits, cfg.lr, cfg.weight_decay);
  std::uniform_int_distribution<std::size_t> pick(0, dataset.sequences.size() - 1);

  double best_val = 0.0;
  int stale = 0;
  for (int l = 1; l <= cfg.max_iters; ++l) {
    if (cfg.cosine_lr) {
      opt.lr = cfg.lr * 0.5 *
               (1.0 + std::cos(M_PI * static_cast<double>(l - 1) / cfg.max_iters));
    }
    LogitParams grad = zeros_like(result.logits);
    double batch_loss = 0.0;
    for (int b = 0; b < cfg.batch_size; ++b) {
      const auto& seq = dataset.sequences[pick(batch_rng)];
      if (cfg.dropout > 0.0) {
        DropoutPlan plan = make_dropout_plan(cfg.dropout, static_cast<int>(seq.size()),
                                             d, dropout_rng);
        ForwardResult fr = forward(result.logits, seq, &plan);
        batch_loss += fr.loss;
        accumulate(grad, backward(fr.tape));
      } else {
        ForwardResult fr = forward(result.logits, seq);
        batch_loss += fr.loss;
        accumulate(grad, backward(fr.tape));
      }
    }
    scale(grad, 1.0 / cfg.batch_size);
    result.train_curve.push_back({l, batch_loss / cfg.batch_size});
    adamw_step(result.logits, grad, opt);

    if (l % cfg.val_every == 0 || l == cfg.max_iters) {
      const double val_loss = filter_loss(to_probs(result.logits), val);
      result.val_curve.push_back({l, val_loss});
      if (cfg.patience > 0) {
        if (result.val_curve.size() == 1 || val_loss < best_val) {
          best_val = val_loss;
          stale = 0;
        } else if (++stale >= cfg.patience) {
          break;
        }
      }
    }
  }
  result.model = to_probs(result.logits);
  return result;
}

GridResult grid_search(const Dataset& dataset, int d,
                       std::span<const double> lrs, std::span<const double> dropouts,
                       const TrainConfig& base, const Dataset& val) {
  if (lrs.empty() || dropouts.empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty hyperparameter grid");
  }
  GridResult out;
  bool first = true;
  double best_loss = 0.0;
  for (double lr : lrs) {
    for (double dropout : dropouts) {
      TrainConfig cfg = base;
      cfg.lr = lr;
      cfg.dropout = dropout;
      TrainResult run = train(dataset, d, cfg, val);
      const double final_val = run.val_curve.empty()
                                   ? filter_loss(run.model, val)
                                   : run.val_curve.back().loss;
      out.runs.emplace_back(lr, dropout, final_val);
      const auto key = std::make_tuple(final_val, lr, dropout);
      if (first || key < std::make_tuple(best_loss, out.lr, out.dropout)) {
        first = false;
        best_loss = final_val;
        out.lr = lr;
        out.dropout = dropout;
        out.best = std::move(run);
      }
    }
  }
  return out;
}

}  // namespace hmmforge

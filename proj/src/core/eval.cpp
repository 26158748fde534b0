#include "core/eval.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace hmmforge {

double evaluate(const Predictor& predictor, const Dataset& val) {
  validate(val);
  if (predictor.vocab_size() != val.m) {
    throw Error(ErrorCode::InvalidArgument, "model/dataset vocabulary mismatch");
  }
  double total = 0.0;
  for (const auto& seq : val.sequences) {
    if (seq.size() < 2) {
      throw Error(ErrorCode::InvalidArgument, "sequence too short to score");
    }
    auto preds = predictor.predict(seq);
    preds.pop_back();
    total += cross_entropy(preds, std::span(seq).subspan(1));
  }
  return total / static_cast<double>(val.sequences.size());
}

double perplexity(double loss_nats) { return std::exp(loss_nats); }

namespace {

SweepRow run_cell(const Dataset& train_set, const Dataset& val, const std::string& method,
                  int dim, std::uint64_t cell_seed, const SweepOptions& options) {
  SweepRow row;
  row.candidate_d = dim;
  row.method = method;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (method == "random") {
      row.loss = evaluate(UniformPredictor(val.m), val);
      row.params = 0;
    } else if (method == "oracle") {
      if (options.oracle == nullptr) {
        throw Error(ErrorCode::InvalidArgument, "oracle method needs generator parameters");
      }
      row.loss = evaluate(FilterPredictor(*options.oracle), val);
      row.params = param_count(options.oracle->d, options.oracle->m);
    } else if (method == "beliefnet") {
      TrainConfig cfg = options.beliefnet;
      cfg.seed = cell_seed;
      TrainResult result = train(train_set, dim, cfg, val);
      row.loss = evaluate(FilterPredictor(result.model), val);
      row.params = param_count(dim, train_set.m);
    } else if (method == "baumwelch") {
      EmConfig cfg = options.em;
      cfg.seed = cell_seed;
      auto [model, report] = fit_baum_welch(train_set, dim, cfg, val);
      row.loss = evaluate(FilterPredictor(model), val);
      row.params = param_count(dim, train_set.m);
    } else if (method == "spectral") {
      Moments moments = estimate_moments(train_set);
      SpectralModel model = build_observable(moments, dim);
      row.loss = evaluate(SpectralPredictor(model), val);
      row.params = param_count(dim, train_set.m);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown method: " + method);
    }
  } catch (const Error& e) {
    row.status = e.code() == ErrorCode::RankDeficiency ? "rank deficiency" : e.what();
    row.loss = std::nan("");
    row.params = 0;
  } catch (const std::exception& e) {
    row.status = e.what();
    row.loss = std::nan("");
    row.params = 0;
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const Dataset& train, const Dataset& val,
                            const std::vector<std::string>& methods,
                            const std::vector<int>& candidate_dims,
                            std::uint64_t seed, const SweepOptions& options) {
  if (methods.empty() || candidate_dims.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep needs methods and dimensions");
  }
  struct Cell {
    std::string method;
    int dim;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  cells.reserve(methods.size() * candidate_dims.size());
  std::uint64_t index = 0;
  for (const auto& method : methods) {
    for (int dim : candidate_dims) {
      cells.push_back({method, dim, derive_seed(seed, index++)});
    }
  }

  std::vector<SweepRow> rows(cells.size());
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      rows[k] = run_cell(train, val, cells[k].method, cells[k].dim, cells[k].seed, options);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= cells.size()) return;
        rows[k] = run_cell(train, val, cells[k].method, cells[k].dim, cells[k].seed, options);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace hmmforge

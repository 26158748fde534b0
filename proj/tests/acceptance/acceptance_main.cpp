// Acceptance suite: end-to-end checks of the numeric contracts, one pass/fail
// line per criterion. Returns nonzero if any gating criterion fails.
//
// Usage: hmmforge_acceptance [--cli /path/to/hmmforge] [--full-scale]
//
// The full-scale benchmark (criterion 9) takes tens of CPU-minutes and is
// off by default; everything else is desk-scale.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "core/baum_welch.hpp"
#include "core/beliefnet.hpp"
#include "core/datagen.hpp"
#include "core/eval.hpp"
#include "core/hmm.hpp"
#include "core/io.hpp"
#include "core/spectral.hpp"
#include "oracles.hpp"

using namespace hmmforge;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string name)
      : number_(number), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& detail) {
    if (!ok) {
      failed_ = true;
      details_.push_back(detail);
    }
  }

  void finish() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ostringstream line;
    line << (failed_ ? "[FAIL]" : "[PASS]") << " criterion " << number_ << ": " << name_
         << " (" << seconds << " s)";
    std::cout << line.str() << "\n";
    for (const auto& detail : details_) std::cout << "       " << detail << "\n";
    if (failed_) ++g_failures;
  }

 private:
  int number_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
  bool failed_ = false;
  std::vector<std::string> details_;
};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

// 1. filter_run equals brute-force path enumeration on 50 seeded instances.
void criterion_filter_oracle() {
  Criterion c(1, "filter matches path-enumeration conditionals (50 instances, 1e-10)");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);   // 2..4
    const int m = 3 + static_cast<int>(seed % 3);   // 3..5
    const int t = 6 + static_cast<int>(seed % 3);   // 6..8
    auto params = oracle::random_hmm(d, m, 1000 + seed);
    auto data = sample_sequences(params, 1, t, seed);
    const auto& seq = data.sequences[0];
    auto filter = filter_run(params, seq);
    auto expected = oracle::enum_predictions(params, seq);
    double worst = 0.0;
    for (std::size_t step = 0; step < filter.size(); ++step) {
      for (std::size_t k = 0; k < filter[step].size(); ++k) {
        worst = std::max(worst, std::abs(filter[step][k] - expected[step][k]));
      }
    }
    c.expect(worst <= 1e-10, "seed " + std::to_string(seed) + ": max deviation " + fmt(worst));
  }
  c.finish();
}

// 2. analytic gradients match central finite differences on 20 instances.
void criterion_gradient_exactness() {
  Criterion c(2, "belief-net gradients match finite differences (20 instances)");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);  // 2..4
    const int m = 3 + static_cast<int>(seed % 3);  // 3..5
    const int t = 4 + static_cast<int>(seed % 3);  // 4..6
    RngEngine rng = make_engine(2000 + seed);
    auto logits = random_logits(d, m, 0.8, rng);
    auto data = sample_sequences(to_probs(logits), 1, t, seed);
    const auto& seq = data.sequences[0];
    auto analytic = backward(forward(logits, seq).tape);
    auto fd = oracle::fd_gradient(logits, seq, 1e-5);

    auto check_block = [&](std::span<const double> a, std::span<const double> b,
                           const char* what) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        bool ok;
        if (std::min(std::abs(a[i]), std::abs(b[i])) < 1e-8) {
          ok = std::abs(a[i] - b[i]) < 1e-8;
        } else {
          ok = std::abs(a[i] - b[i]) / std::abs(b[i]) < 1e-4;
        }
        c.expect(ok, "seed " + std::to_string(seed) + " " + what + "[" +
                         std::to_string(i) + "]: analytic " + fmt(a[i]) + " vs fd " +
                         fmt(b[i]));
      }
    };
    check_block(analytic.pi, fd.pi, "pi");
    check_block(analytic.trans.data(), fd.trans.data(), "A");
    check_block(analytic.emis.data(), fd.emis.data(), "C");
  }
  c.finish();
}

// 3. logit counts for the reference configurations.
void criterion_param_counts() {
  Criterion c(3, "parameter counts: (64,128) -> 12352, (64,32) -> 6208");
  c.expect(param_count(64, 128) == 12352,
           "param_count(64,128) = " + std::to_string(param_count(64, 128)));
  c.expect(param_count(64, 32) == 6208,
           "param_count(64,32) = " + std::to_string(param_count(64, 32)));
  c.finish();
}

// 4. uniform-predictor baselines and the perplexity map.
void criterion_random_baselines() {
  Criterion c(4, "random baselines ln 128, ln 32 and perplexity(ln 82) = 82");
  Dataset data128;
  data128.m = 128;
  data128.sequences = {{0, 1, 2, 3, 4, 5, 6, 7}, {127, 100, 50, 25, 12, 6, 3, 1}};
  const double loss128 = evaluate(UniformPredictor(128), data128);
  c.expect(std::abs(loss128 - 4.852) <= 1e-3, "ln 128 baseline: " + fmt(loss128));

  Dataset data32 = data128;
  data32.m = 32;
  data32.sequences = {{0, 1, 2, 3}, {31, 16, 8, 4}};
  const double loss32 = evaluate(UniformPredictor(32), data32);
  c.expect(std::abs(loss32 - 3.466) <= 1e-3, "ln 32 baseline: " + fmt(loss32));

  const double pp = perplexity(std::log(82.0));
  c.expect(std::abs(pp - 82.0) <= 1e-6, "perplexity(ln 82) = " + fmt(pp));
  c.finish();
}

// 5. every EM restart improves monotonically on five desk-scale datasets.
void criterion_em_monotonicity() {
  Criterion c(5, "Baum-Welch log-likelihood is non-decreasing (5 datasets x 5 restarts)");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SyntheticConfig cfg;
    cfg.d = 4;
    cfg.m = 6;
    cfg.n_train = 100;
    cfg.t = 64;
    cfg.seed = 3000 + seed;
    auto instance = make_instance(cfg);
    EmConfig em;
    em.max_iters = 20;
    em.restarts = 5;
    em.seed = seed;
    auto [model, report] = fit_baum_welch(instance.train, 4, em, instance.val);
    for (std::size_t r = 0; r < report.loglik.size(); ++r) {
      const auto& trajectory = report.loglik[r];
      for (std::size_t i = 1; i < trajectory.size(); ++i) {
        c.expect(trajectory[i] >= trajectory[i - 1] - 1e-9,
                 "dataset " + std::to_string(seed) + " restart " + std::to_string(r) +
                     " iteration " + std::to_string(i) + ": " + fmt(trajectory[i - 1]) +
                     " -> " + fmt(trajectory[i]));
      }
    }
  }
  c.finish();
}

// 6. spectral exactness under exact moments; rank-deficiency failure beyond m.
void criterion_spectral() {
  Criterion c(6, "spectral exactness (d=2, m=3, T=10) and rank-deficiency failure");
  HmmParams p;
  p.d = 2;
  p.m = 3;
  p.pi = {0.6, 0.4};
  p.trans = Matrix(2, 2);
  p.trans(0, 0) = 0.7;
  p.trans(0, 1) = 0.3;
  p.trans(1, 0) = 0.2;
  p.trans(1, 1) = 0.8;
  p.emis = Matrix(2, 3);
  p.emis(0, 0) = 0.6;
  p.emis(0, 1) = 0.3;
  p.emis(0, 2) = 0.1;
  p.emis(1, 0) = 0.1;
  p.emis(1, 1) = 0.2;
  p.emis(1, 2) = 0.7;

  auto model = build_observable(exact_moments(p), 2);
  HmmParams stationary = p;
  stationary.pi = stationary_distribution(p.trans);
  auto data = sample_sequences(p, 5, 10, 60);
  double worst = 0.0;
  for (const auto& seq : data.sequences) {
    auto spectral = spectral_predict(model, seq);
    auto filter = filter_run(stationary, seq);
    for (std::size_t t = 0; t < seq.size(); ++t) {
      for (std::size_t k = 0; k < 3; ++k) {
        worst = std::max(worst, std::abs(spectral[t][k] - filter[t][k]));
      }
    }
  }
  c.expect(worst <= 1e-6, "max |spectral - filter| = " + fmt(worst));

  bool failed_as_expected = false;
  std::string message;
  try {
    build_observable(exact_moments(p), 4);  // d > m
  } catch (const Error& e) {
    failed_as_expected = e.code() == ErrorCode::RankDeficiency;
    message = e.what();
  }
  c.expect(failed_as_expected && message == "rank deficiency",
           "overcomplete build: expected rank-deficiency error, got '" + message + "'");
  c.finish();
}

// 7. desk-scale belief-net training reaches the oracle within 0.1 nats.
void criterion_desk_beliefnet(TrainResult* out_result, SyntheticInstance* out_instance) {
  Criterion c(7, "desk-scale belief-net: within 0.1 nats of the oracle, 0.5 below random");
  SyntheticConfig cfg;
  cfg.d = 8;
  cfg.m = 16;
  cfg.lambda = 0.9;
  cfg.n_train = 200;
  cfg.t = 64;
  cfg.seed = 7001;
  auto instance = make_instance(cfg);

  TrainConfig tc;
  tc.batch_size = 10;
  tc.max_iters = 1000;
  tc.lr = 0.05;
  tc.val_every = 50;
  tc.seed = 7;
  auto result = train(instance.train, 8, tc, instance.val);

  const double oracle_loss = filter_loss(instance.params, instance.val);
  const double final_val = result.val_curve.back().loss;
  c.expect(final_val <= oracle_loss + 0.1,
           "final validation " + fmt(final_val) + " vs oracle " + fmt(oracle_loss));
  c.expect(final_val <= std::log(16.0) - 0.5,
           "final validation " + fmt(final_val) + " vs random " + fmt(std::log(16.0)));
  c.finish();
  if (out_result != nullptr) *out_result = std::move(result);
  if (out_instance != nullptr) *out_instance = std::move(instance);
}

// 8. sweep shape: d-hat below the true d hurts, at/above the true d plateaus.
void criterion_sweep_shape() {
  Criterion c(8, "sweep shape over d-hat {2,4,8,16}: loss(2) - loss(8) >= 0.2, |loss(8)-loss(16)| < 0.1");
  double mean2 = 0.0;
  double mean8 = 0.0;
  double mean16 = 0.0;
  const std::vector<std::uint64_t> data_seeds = {7004, 7008, 7011};
  const double n_seeds = static_cast<double>(data_seeds.size());
  for (std::uint64_t data_seed : data_seeds) {
    SyntheticConfig cfg;
    cfg.d = 8;
    cfg.m = 16;
    cfg.n_train = 200;
    cfg.t = 64;
    cfg.seed = data_seed;
    auto instance = make_instance(cfg);

    SweepOptions options;
    options.beliefnet.batch_size = 10;
    options.beliefnet.max_iters = 1000;
    options.beliefnet.lr = 0.05;
    options.beliefnet.val_every = 50;
    auto rows = sweep(instance.train, instance.val, {"beliefnet"}, {2, 4, 8, 16},
                      0, options);
    for (const auto& row : rows) {
      c.expect(row.status == "ok", "cell d=" + std::to_string(row.candidate_d) +
                                       " failed: " + row.status);
      if (row.candidate_d == 2) mean2 += row.loss / n_seeds;
      if (row.candidate_d == 8) mean8 += row.loss / n_seeds;
      if (row.candidate_d == 16) mean16 += row.loss / n_seeds;
    }
  }
  c.expect(mean2 - mean8 >= 0.2, "mean loss at 2 = " + fmt(mean2) + ", at 8 = " + fmt(mean8));
  c.expect(std::abs(mean8 - mean16) < 0.1,
           "mean loss at 8 = " + fmt(mean8) + ", at 16 = " + fmt(mean16));
  c.finish();
}

// 9. optional full-scale benchmark on the undercomplete configuration.
void criterion_full_scale(bool enabled) {
  if (!enabled) {
    std::cout << "[SKIP] criterion 9: full-scale benchmark (run with --full-scale; "
                 "~tens of CPU-minutes)\n";
    return;
  }
  Criterion c(9, "full-scale undercomplete run lands near the reference loss");
  SyntheticConfig cfg;
  cfg.d = 64;
  cfg.m = 128;
  cfg.lambda = 0.9;
  cfg.n_train = 4000;
  cfg.t = 256;
  cfg.seed = 1;
  auto instance = make_instance(cfg);

  TrainConfig tc;
  tc.batch_size = 10;
  tc.max_iters = 2000;
  tc.lr = 0.1;
  tc.val_every = 50;
  tc.seed = 1;
  auto result = train(instance.train, 64, tc, instance.val);
  const double final_val = result.val_curve.back().loss;
  const double oracle_loss = filter_loss(instance.params, instance.val);
  std::cout << "       full-scale: final validation " << fmt(final_val) << ", oracle "
            << fmt(oracle_loss) << "\n";
  c.expect(std::abs(final_val - 1.569) <= 0.1,
           "final validation " + fmt(final_val) + " vs reference 1.569 +- 0.1");
  c.finish();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// 10. CLI reruns reproduce datasets and loss curves byte for byte.
void criterion_reproducibility(const std::string& cli) {
  Criterion c(10, "CLI reruns are byte-identical (datasets and loss curves)");
  if (cli.empty()) {
    c.expect(false, "no --cli path given");
    c.finish();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "hmmforge_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  auto run = [&](const std::string& args) {
    const std::string command = cli + " " + args + " > /dev/null 2>&1";
    return std::system(command.c_str());
  };

  const std::string gen_flags =
      "generate --d 8 --m 16 --lambda 0.9 --n 40 --t 64 --seed 7";
  c.expect(run(gen_flags + " --out " + (root / "gen_a").string()) == 0, "generate A failed");
  c.expect(run(gen_flags + " --out " + (root / "gen_b").string()) == 0, "generate B failed");
  for (const char* name : {"train.txt", "val.txt", "generator.json"}) {
    c.expect(slurp((root / "gen_a" / name).string()) ==
                 slurp((root / "gen_b" / name).string()),
             std::string(name) + " differs between identical generate runs");
  }

  const std::string train_flags = "train --method beliefnet --data " +
                                  (root / "gen_a" / "train.txt").string() + " --val " +
                                  (root / "gen_a" / "val.txt").string() +
                                  " --d 4 --lr 0.05 --batch 10 --iters 120 --seed 3";
  c.expect(run(train_flags + " --out " + (root / "fit_a").string()) == 0, "train A failed");
  c.expect(run(train_flags + " --out " + (root / "fit_b").string()) == 0, "train B failed");
  for (const char* name : {"training_loss.csv", "validation_loss.csv", "model.json"}) {
    c.expect(slurp((root / "fit_a" / name).string()) ==
                 slurp((root / "fit_b" / name).string()),
             std::string(name) + " differs between identical train runs");
  }

  // Replaying from the manifest must reproduce the same bytes too.
  c.expect(run("rerun --manifest " + (root / "fit_a" / "manifest.json").string() +
               " --out " + (root / "fit_c").string()) == 0,
           "rerun failed");
  for (const char* name : {"training_loss.csv", "validation_loss.csv", "model.json"}) {
    c.expect(slurp((root / "fit_a" / name).string()) ==
                 slurp((root / "fit_c" / name).string()),
             std::string(name) + " differs between run and manifest rerun");
  }
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  bool full_scale = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
    if (arg == "--full-scale") full_scale = true;
  }

  criterion_filter_oracle();
  criterion_gradient_exactness();
  criterion_param_counts();
  criterion_random_baselines();
  criterion_em_monotonicity();
  criterion_spectral();
  criterion_desk_beliefnet(nullptr, nullptr);
  criterion_sweep_shape();
  criterion_full_scale(full_scale);
  criterion_reproducibility(cli);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}

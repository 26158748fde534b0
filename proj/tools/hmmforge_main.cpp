// hmmforge command-line tool. Talks to the library exclusively through the C
// API in hmmforge/hmmforge.h; all artifacts (datasets, models, loss curves,
// sweep reports, manifests) are plain files under the --out directory.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hmmforge/hmmforge.h"
#include "json.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 ok, 2 usage/config error, 3 rank deficiency, 4 numeric failure.
constexpr int kExitUsage = 2;
constexpr int kExitRankDeficiency = 3;
constexpr int kExitNumeric = 4;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int exit_code, const std::string& message) {
  throw CliError{exit_code, message};
}

void check(hf_status status) {
  if (status == HF_OK) return;
  int exit_code = 1;
  switch (status) {
    case HF_INVALID_ARGUMENT:
    case HF_IO_ERROR:
      exit_code = kExitUsage;
      break;
    case HF_RANK_DEFICIENCY:
      exit_code = kExitRankDeficiency;
      break;
    case HF_NUMERIC_ERROR:
      exit_code = kExitNumeric;
      break;
    default:
      break;
  }
  fail(exit_code, hf_last_error());
}

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* ptr) const { Free(ptr); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, HandleDeleter<T, Free>>;

using ModelHandle = Handle<hf_model, hf_model_free>;
using DatasetHandle = Handle<hf_dataset, hf_dataset_free>;
using VocabHandle = Handle<hf_vocab, hf_vocab_free>;
using SpectralHandle = Handle<hf_spectral, hf_spectral_free>;
using LogitsHandle = Handle<hf_logits, hf_logits_free>;
using CurveHandle = Handle<hf_curve, hf_curve_free>;
using EmReportHandle = Handle<hf_em_report, hf_em_report_free>;
using SweepReportHandle = Handle<hf_sweep_report, hf_sweep_report_free>;

DatasetHandle load_dataset(const std::string& path) {
  hf_dataset* raw = nullptr;
  check(hf_dataset_load(path.c_str(), &raw));
  return DatasetHandle(raw);
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buffer[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

// One manifest per run: the command, its resolved configuration, and the file
// paths involved. `hmmforge rerun` replays the stored args.
class Manifest {
 public:
  Manifest(std::string command, std::string out_dir)
      : command_(std::move(command)), out_dir_(std::move(out_dir)) {
    started_ = timestamp_utc();
    std::filesystem::create_directories(out_dir_);
  }

  void config(const std::string& key, const json& value) { config_[key] = value; }
  void input(const std::string& path) { inputs_.push_back(path); }
  void output(const std::string& path) { outputs_.push_back(path); }
  void argv(std::vector<std::string> args) { argv_ = std::move(args); }

  std::string path(const std::string& name) const {
    return (std::filesystem::path(out_dir_) / name).string();
  }

  void write(std::uint64_t seed) {
    json j;
    j["command"] = command_;
    j["argv"] = argv_;  // replayable via `hmmforge rerun`
    j["config"] = config_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["seed"] = seed;
    j["tool_version"] = hf_version();
    j["started"] = started_;
    j["finished"] = timestamp_utc();
    std::ofstream out(path("manifest.json"));
    out << j.dump(2) << "\n";
  }

 private:
  std::string command_;
  std::string out_dir_;
  std::string started_;
  json config_ = json::object();
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<std::string> argv_;
};

void write_curve_csv(const hf_curve* curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(kExitUsage, "cannot write " + path);
  out << "iteration,loss\n" << std::setprecision(17);
  for (size_t i = 0; i < hf_curve_size(curve); ++i) {
    int32_t iteration = 0;
    double value = 0.0;
    check(hf_curve_point(curve, i, &iteration, &value));
    out << iteration << ',' << value << "\n";
  }
}

void write_rank_csv(const hf_curve* curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(kExitUsage, "cannot write " + path);
  out << "k,sigma\n" << std::setprecision(17);
  for (size_t i = 0; i < hf_curve_size(curve); ++i) {
    int32_t k = 0;
    double sigma = 0.0;
    check(hf_curve_point(curve, i, &k, &sigma));
    out << k << ',' << sigma << "\n";
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("HMMFORGE_SEED");
  if (env == nullptr) return 0;
  return std::strtoull(env, nullptr, 10);
}

// ---- subcommand state --------------------------------------------------------

struct GenerateArgs {
  hf_generate_config cfg{};
  std::string out_dir;
  std::vector<std::string> argv;
};

struct IngestArgs {
  std::string corpus;
  int32_t t = 256;
  int32_t stride = 0;  // 0 means stride = t
  double val_fraction = 0.10;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::vector<std::string> argv;
};

struct TrainArgs {
  std::string method;
  std::string data;
  std::string val;
  int32_t d = 8;
  hf_train_config train_cfg{};
  hf_em_config em_cfg{};
  bool grid = false;
  std::string out_dir;
  std::vector<std::string> argv;
};

struct EvalArgs {
  std::string model;
  std::string data;
  std::string out_dir;
  std::vector<std::string> argv;
};

struct SweepArgs {
  std::string data;
  std::string val;
  std::string methods = "beliefnet,baumwelch,spectral,random,oracle";
  std::vector<int32_t> dims;
  std::string truth;
  std::uint64_t seed = 0;
  int32_t jobs = 1;
  hf_train_config train_cfg{};
  hf_em_config em_cfg{};
  std::string out_dir;
  std::vector<std::string> argv;
};

int run_generate(const GenerateArgs& args) {
  Manifest manifest("generate", args.out_dir);
  manifest.argv(args.argv);
  manifest.config("d", args.cfg.d);
  manifest.config("m", args.cfg.m);
  manifest.config("lambda", args.cfg.lambda);
  manifest.config("temp_a", args.cfg.temp_trans);
  manifest.config("temp_c", args.cfg.temp_emis);
  manifest.config("n", args.cfg.n_train);
  manifest.config("t", args.cfg.t);
  manifest.config("val_fraction", args.cfg.val_fraction);

  hf_model* model = nullptr;
  hf_dataset* train = nullptr;
  hf_dataset* val = nullptr;
  check(hf_generate(&args.cfg, &model, &train, &val));
  ModelHandle model_guard(model);
  DatasetHandle train_guard(train);
  DatasetHandle val_guard(val);

  const std::string train_path = manifest.path("train.txt");
  const std::string val_path = manifest.path("val.txt");
  const std::string model_path = manifest.path("generator.json");
  check(hf_dataset_save(train, train_path.c_str()));
  check(hf_dataset_save(val, val_path.c_str()));
  check(hf_model_save(model, model_path.c_str()));
  manifest.output(train_path);
  manifest.output(val_path);
  manifest.output(model_path);
  manifest.write(args.cfg.seed);
  std::cout << "wrote " << train_path << " (" << hf_dataset_num_sequences(train)
            << " sequences), " << val_path << " (" << hf_dataset_num_sequences(val)
            << " sequences)\n";
  return 0;
}

int run_ingest(const IngestArgs& args) {
  Manifest manifest("ingest", args.out_dir);
  manifest.argv(args.argv);
  const int32_t stride = args.stride > 0 ? args.stride : args.t;
  manifest.config("corpus", args.corpus);
  manifest.config("t", args.t);
  manifest.config("stride", stride);
  manifest.config("val_fraction", args.val_fraction);
  manifest.input(args.corpus);

  hf_vocab* vocab = nullptr;
  check(hf_vocab_build_from_file(args.corpus.c_str(), &vocab));
  VocabHandle vocab_guard(vocab);
  hf_dataset* full = nullptr;
  check(hf_chunk_corpus(args.corpus.c_str(), vocab, args.t, stride, &full));
  DatasetHandle full_guard(full);
  hf_dataset* train = nullptr;
  hf_dataset* val = nullptr;
  check(hf_split(full, args.val_fraction, args.seed, &train, &val));
  DatasetHandle train_guard(train);
  DatasetHandle val_guard(val);

  const std::string train_path = manifest.path("train.txt");
  const std::string val_path = manifest.path("val.txt");
  const std::string vocab_path = manifest.path("vocab.json");
  check(hf_dataset_save(train, train_path.c_str()));
  check(hf_dataset_save(val, val_path.c_str()));
  check(hf_vocab_save(vocab, vocab_path.c_str()));
  manifest.output(train_path);
  manifest.output(val_path);
  manifest.output(vocab_path);
  manifest.write(args.seed);
  std::cout << "vocabulary size " << hf_vocab_size(vocab) << ", "
            << hf_dataset_num_sequences(train) << "/" << hf_dataset_num_sequences(val)
            << " train/val sequences\n";
  return 0;
}

int run_train(const TrainArgs& args) {
  Manifest manifest("train", args.out_dir);
  manifest.argv(args.argv);
  manifest.config("method", args.method);
  manifest.config("data", args.data);
  manifest.config("val", args.val);
  manifest.config("d", args.d);
  manifest.input(args.data);
  manifest.input(args.val);

  DatasetHandle train = load_dataset(args.data);
  DatasetHandle val = load_dataset(args.val);

  if (args.method == "beliefnet") {
    manifest.config("lr", args.train_cfg.lr);
    manifest.config("batch", args.train_cfg.batch_size);
    manifest.config("iters", args.train_cfg.max_iters);
    manifest.config("dropout", args.train_cfg.dropout);
    manifest.config("val_every", args.train_cfg.val_every);
    manifest.config("weight_decay", args.train_cfg.weight_decay);
    manifest.config("cosine_lr", args.train_cfg.cosine_lr != 0);
    manifest.config("grid", args.grid);

    hf_model* model = nullptr;
    hf_logits* logits = nullptr;
    hf_curve* train_curve = nullptr;
    hf_curve* val_curve = nullptr;
    if (args.grid) {
      const double lrs[] = {0.01, 0.1};
      const double dropouts[] = {0.0, 0.1};
      double best_lr = 0.0;
      double best_dropout = 0.0;
      check(hf_grid_search(train.get(), val.get(), args.d, &args.train_cfg, lrs, 2,
                           dropouts, 2, &model, &logits, &train_curve, &val_curve,
                           &best_lr, &best_dropout));
      manifest.config("selected_lr", best_lr);
      manifest.config("selected_dropout", best_dropout);
      std::cout << "grid selected lr=" << best_lr << " dropout=" << best_dropout << "\n";
    } else {
      check(hf_train_beliefnet(train.get(), val.get(), args.d, &args.train_cfg, &model,
                               &logits, &train_curve, &val_curve));
    }
    ModelHandle model_guard(model);
    LogitsHandle logits_guard(logits);
    CurveHandle train_curve_guard(train_curve);
    CurveHandle val_curve_guard(val_curve);

    const std::string model_path = manifest.path("model.json");
    const std::string logits_path = manifest.path("logits.json");
    const std::string train_csv = manifest.path("training_loss.csv");
    const std::string val_csv = manifest.path("validation_loss.csv");
    check(hf_model_save(model, model_path.c_str()));
    check(hf_logits_save(logits, logits_path.c_str()));
    write_curve_csv(train_curve, train_csv);
    write_curve_csv(val_curve, val_csv);
    manifest.output(model_path);
    manifest.output(logits_path);
    manifest.output(train_csv);
    manifest.output(val_csv);
    manifest.write(args.train_cfg.seed);

    double final_val = std::nan("");
    if (hf_curve_size(val_curve) > 0) {
      check(hf_curve_point(val_curve, hf_curve_size(val_curve) - 1, nullptr, &final_val));
    }
    std::cout << "final validation loss " << final_val << "\n";
    return 0;
  }

  if (args.method == "baumwelch") {
    manifest.config("restarts", args.em_cfg.restarts);
    manifest.config("iters", args.em_cfg.max_iters);

    hf_model* model = nullptr;
    hf_em_report* report = nullptr;
    check(hf_fit_baumwelch(train.get(), val.get(), args.d, &args.em_cfg, &model, &report));
    ModelHandle model_guard(model);
    EmReportHandle report_guard(report);

    const std::string model_path = manifest.path("model.json");
    check(hf_model_save(model, model_path.c_str()));
    const std::string fit_csv = manifest.path("fit_report.csv");
    {
      std::ofstream out(fit_csv);
      out << "restart,iteration,loglik\n" << std::setprecision(17);
      for (int32_t r = 0; r < hf_em_report_restarts(report); ++r) {
        for (int32_t i = 0; i < hf_em_report_iterations(report, r); ++i) {
          double ll = 0.0;
          check(hf_em_report_loglik(report, r, i, &ll));
          out << r << ',' << i << ',' << ll << "\n";
        }
      }
    }
    const int32_t selected = hf_em_report_selected(report);
    double selected_val = 0.0;
    check(hf_em_report_val_loss(report, selected, &selected_val));
    const std::string summary_path = manifest.path("fit_summary.json");
    {
      json summary;
      summary["selected_restart"] = selected;
      summary["validation_loss"] = selected_val;
      std::ofstream out(summary_path);
      out << summary.dump(2) << "\n";
    }
    manifest.output(model_path);
    manifest.output(fit_csv);
    manifest.output(summary_path);
    manifest.write(args.em_cfg.seed);
    std::cout << "selected restart " << selected << ", validation loss " << selected_val
              << "\n";
    return 0;
  }

  if (args.method == "spectral") {
    hf_spectral* model = nullptr;
    hf_curve* rank_curve = nullptr;
    check(hf_spectral_fit(train.get(), args.d, &model, &rank_curve));
    SpectralHandle model_guard(model);
    CurveHandle rank_guard(rank_curve);

    const std::string model_path = manifest.path("model.json");
    const std::string rank_csv = manifest.path("rank_report.csv");
    check(hf_spectral_save(model, model_path.c_str()));
    write_rank_csv(rank_curve, rank_csv);
    double val_loss = 0.0;
    check(hf_spectral_evaluate(model, val.get(), &val_loss));
    manifest.output(model_path);
    manifest.output(rank_csv);
    manifest.write(0);
    std::cout << "validation loss " << val_loss << "\n";
    return 0;
  }

  fail(kExitUsage, "unknown method: " + args.method);
}

int run_eval(const EvalArgs& args) {
  Manifest manifest("eval", args.out_dir);
  manifest.argv(args.argv);
  manifest.config("model", args.model);
  manifest.config("data", args.data);
  manifest.input(args.model);
  manifest.input(args.data);

  DatasetHandle dataset = load_dataset(args.data);
  int32_t kind = 0;
  check(hf_model_file_kind(args.model.c_str(), &kind));
  double loss = 0.0;
  if (kind == 1) {
    hf_spectral* model = nullptr;
    check(hf_spectral_load(args.model.c_str(), &model));
    SpectralHandle guard(model);
    check(hf_spectral_evaluate(model, dataset.get(), &loss));
  } else {
    hf_model* model = nullptr;
    check(hf_model_load(args.model.c_str(), &model));
    ModelHandle guard(model);
    check(hf_evaluate(model, dataset.get(), &loss));
  }

  json metrics;
  metrics["loss"] = loss;
  metrics["perplexity"] = hf_perplexity(loss);
  metrics["m"] = hf_dataset_vocab_size(dataset.get());
  metrics["n_sequences"] = hf_dataset_num_sequences(dataset.get());
  const std::string metrics_path = manifest.path("metrics.json");
  {
    std::ofstream out(metrics_path);
    out << metrics.dump(2) << "\n";
  }
  manifest.output(metrics_path);
  manifest.write(0);
  std::cout << metrics.dump(2) << "\n";
  return 0;
}

int run_sweep(const SweepArgs& args) {
  Manifest manifest("sweep", args.out_dir);
  manifest.argv(args.argv);
  manifest.config("data", args.data);
  manifest.config("val", args.val);
  manifest.config("methods", args.methods);
  manifest.config("dims", args.dims);
  manifest.config("jobs", args.jobs);
  manifest.input(args.data);
  manifest.input(args.val);

  DatasetHandle train = load_dataset(args.data);
  DatasetHandle val = load_dataset(args.val);
  ModelHandle truth;
  if (!args.truth.empty()) {
    hf_model* raw = nullptr;
    check(hf_model_load(args.truth.c_str(), &raw));
    truth.reset(raw);
    manifest.input(args.truth);
  }

  hf_sweep_config cfg;
  hf_sweep_config_init(&cfg);
  cfg.em = args.em_cfg;
  cfg.beliefnet = args.train_cfg;
  cfg.jobs = args.jobs;

  hf_sweep_report* report = nullptr;
  check(hf_sweep(train.get(), val.get(), args.methods.c_str(), args.dims.data(),
                 args.dims.size(), args.seed, &cfg, truth.get(), &report));
  SweepReportHandle report_guard(report);

  const std::string csv_path = manifest.path("sweep.csv");
  {
    std::ofstream out(csv_path);
    out << "candidate_d,method,loss,params,seconds,status\n" << std::setprecision(17);
    for (size_t i = 0; i < hf_sweep_report_rows(report); ++i) {
      int32_t dim = 0;
      const char* method = nullptr;
      double loss = 0.0;
      int64_t params = 0;
      double seconds = 0.0;
      const char* status = nullptr;
      check(hf_sweep_report_row(report, i, &dim, &method, &loss, &params, &seconds,
                                &status));
      out << dim << ',' << method << ',';
      if (std::string(status) == "ok") out << loss;
      out << ',' << params << ',' << seconds << ',' << status << "\n";
    }
  }
  manifest.output(csv_path);
  manifest.write(args.seed);

  // Console summary.
  std::cout << std::left << std::setw(6) << "d" << std::setw(12) << "method"
            << std::setw(12) << "loss" << "status\n";
  for (size_t i = 0; i < hf_sweep_report_rows(report); ++i) {
    int32_t dim = 0;
    const char* method = nullptr;
    double loss = 0.0;
    const char* status = nullptr;
    check(hf_sweep_report_row(report, i, &dim, &method, &loss, nullptr, nullptr, &status));
    std::cout << std::left << std::setw(6) << dim << std::setw(12) << method;
    if (std::string(status) == "ok") {
      std::cout << std::setw(12) << std::setprecision(4) << loss;
    } else {
      std::cout << std::setw(12) << "-";
    }
    std::cout << status << "\n";
  }
  return 0;
}

int dispatch(std::vector<std::string> args);

int run_rerun(const std::string& manifest_path, const std::string& out_dir) {
  std::ifstream in(manifest_path);
  if (!in) fail(kExitUsage, "cannot open " + manifest_path);
  json manifest;
  in >> manifest;
  std::vector<std::string> args;
  args.push_back(manifest.at("command").get<std::string>());
  for (const auto& arg : manifest.at("argv").get<std::vector<std::string>>()) {
    args.push_back(arg);
  }
  args.push_back("--out");
  args.push_back(out_dir);
  return dispatch(std::move(args));
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"HMM learning toolkit: synthetic data, belief-net / Baum-Welch / "
               "spectral training, evaluation and dimension sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hf_version());

  const std::uint64_t env_seed = default_seed();

  GenerateArgs gen;
  hf_generate_config_init(&gen.cfg);
  gen.cfg.seed = env_seed;
  auto* generate = app.add_subcommand("generate", "Sample a synthetic HMM benchmark");
  generate->add_option("--d", gen.cfg.d, "hidden-state count");
  generate->add_option("--m", gen.cfg.m, "observation count");
  generate->add_option("--lambda", gen.cfg.lambda, "cyclic-structure weight");
  generate->add_option("--temp-a", gen.cfg.temp_trans, "random-transition temperature");
  generate->add_option("--temp-c", gen.cfg.temp_emis, "emission temperature");
  generate->add_option("--n", gen.cfg.n_train, "training sequence count");
  generate->add_option("--t", gen.cfg.t, "sequence length");
  generate->add_option("--val-fraction", gen.cfg.val_fraction, "validation fraction");
  generate->add_option("--seed", gen.cfg.seed, "RNG seed");
  generate->add_option("--out", gen.out_dir, "output directory")->required();

  IngestArgs ingest;
  ingest.seed = env_seed;
  auto* ingest_cmd = app.add_subcommand("ingest", "Chunk a character corpus into a dataset");
  ingest_cmd->add_option("--corpus", ingest.corpus, "UTF-8 text file")->required();
  ingest_cmd->add_option("--t", ingest.t, "chunk length");
  ingest_cmd->add_option("--stride", ingest.stride, "chunk stride (default: t)");
  ingest_cmd->add_option("--val-fraction", ingest.val_fraction, "validation fraction");
  ingest_cmd->add_option("--seed", ingest.seed, "split seed");
  ingest_cmd->add_option("--out", ingest.out_dir, "output directory")->required();

  TrainArgs train;
  hf_train_config_init(&train.train_cfg);
  hf_em_config_init(&train.em_cfg);
  train.train_cfg.seed = env_seed;
  train.em_cfg.seed = env_seed;
  auto* train_cmd = app.add_subcommand("train", "Fit an HMM to a dataset");
  train_cmd->add_option("--method", train.method, "beliefnet|baumwelch|spectral")->required();
  train_cmd->add_option("--data", train.data, "training dataset file")->required();
  train_cmd->add_option("--val", train.val, "validation dataset file");
  train_cmd->add_option("--d", train.d, "candidate hidden-state count")->required();
  train_cmd->add_option("--lr", train.train_cfg.lr, "learning rate");
  train_cmd->add_option("--batch", train.train_cfg.batch_size, "batch size");
  train_cmd->add_option("--dropout", train.train_cfg.dropout, "dropout rate");
  train_cmd->add_option("--val-every", train.train_cfg.val_every, "validation interval");
  train_cmd->add_option("--weight-decay", train.train_cfg.weight_decay, "AdamW weight decay");
  train_cmd->add_flag("--cosine", [&train](std::int64_t) { train.train_cfg.cosine_lr = 1; },
                      "cosine learning-rate decay");
  train_cmd->add_flag("--grid", train.grid, "grid-search lr x dropout");
  train_cmd->add_option("--restarts", train.em_cfg.restarts, "Baum-Welch restarts");
  int32_t iters = -1;
  train_cmd->add_option("--iters", iters, "training iterations");
  std::uint64_t train_seed = env_seed;
  train_cmd->add_option("--seed", train_seed, "RNG seed");
  train_cmd->add_option("--out", train.out_dir, "output directory")->required();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a model on a dataset");
  eval_cmd->add_option("--model", eval.model, "model JSON (HMM or spectral)")->required();
  eval_cmd->add_option("--data", eval.data, "dataset file")->required();
  eval_cmd->add_option("--out", eval.out_dir, "output directory")->required();

  SweepArgs sweep;
  hf_train_config_init(&sweep.train_cfg);
  hf_em_config_init(&sweep.em_cfg);
  sweep.seed = env_seed;
  auto* sweep_cmd = app.add_subcommand("sweep", "Fit + evaluate across candidate dimensions");
  sweep_cmd->add_option("--data", sweep.data, "training dataset file")->required();
  sweep_cmd->add_option("--val", sweep.val, "validation dataset file")->required();
  sweep_cmd->add_option("--methods", sweep.methods, "comma-separated method list");
  sweep_cmd->add_option("--dims", sweep.dims, "candidate dimensions")->required()->delimiter(',');
  sweep_cmd->add_option("--truth", sweep.truth, "generator model JSON (for oracle rows)");
  sweep_cmd->add_option("--seed", sweep.seed, "RNG seed");
  sweep_cmd->add_option("--jobs", sweep.jobs, "parallel workers");
  sweep_cmd->add_option("--lr", sweep.train_cfg.lr, "belief-net learning rate");
  sweep_cmd->add_option("--batch", sweep.train_cfg.batch_size, "belief-net batch size");
  sweep_cmd->add_option("--iters", sweep.train_cfg.max_iters, "belief-net iterations");
  sweep_cmd->add_option("--restarts", sweep.em_cfg.restarts, "Baum-Welch restarts");
  sweep_cmd->add_option("--em-iters", sweep.em_cfg.max_iters, "Baum-Welch iterations");
  sweep_cmd->add_option("--out", sweep.out_dir, "output directory")->required();

  std::string rerun_manifest;
  std::string rerun_out;
  auto* rerun_cmd = app.add_subcommand("rerun", "Replay a command from its manifest");
  rerun_cmd->add_option("--manifest", rerun_manifest, "manifest.json path")->required();
  rerun_cmd->add_option("--out", rerun_out, "output directory")->required();

  // CLI11 consumes the vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  // Flags to replay from the manifest: everything but --out, with the
  // resolved seed pinned so env-var fallbacks cannot drift.
  auto replay_args = [&args](std::uint64_t resolved_seed, bool has_seed_flag) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == "--out") {
        ++i;
        continue;
      }
      out.push_back(args[i]);
    }
    if (has_seed_flag &&
        std::find(out.begin(), out.end(), "--seed") == out.end()) {
      out.push_back("--seed");
      out.push_back(std::to_string(resolved_seed));
    }
    return out;
  };

  if (generate->parsed()) {
    gen.argv = replay_args(gen.cfg.seed, true);
    return run_generate(gen);
  }
  if (ingest_cmd->parsed()) {
    ingest.argv = replay_args(ingest.seed, true);
    return run_ingest(ingest);
  }
  if (train_cmd->parsed()) {
    train.train_cfg.seed = train_seed;
    train.em_cfg.seed = train_seed;
    if (iters >= 0) {
      train.train_cfg.max_iters = iters;
      train.em_cfg.max_iters = iters;
    }
    if (train.val.empty()) train.val = train.data;
    train.argv = replay_args(train_seed, true);
    return run_train(train);
  }
  if (eval_cmd->parsed()) {
    eval.argv = replay_args(0, false);
    return run_eval(eval);
  }
  if (sweep_cmd->parsed()) {
    sweep.argv = replay_args(sweep.seed, true);
    return run_sweep(sweep);
  }
  if (rerun_cmd->parsed()) return run_rerun(rerun_manifest, rerun_out);
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(std::move(args));
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

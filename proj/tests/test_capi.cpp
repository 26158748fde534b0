// Exercises the shared-library surface exactly as an external consumer would:
// only hmmforge/hmmforge.h, opaque handles and status codes.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hmmforge/hmmforge.h"

namespace {

std::string temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "hmmforge_capi_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(hf_version() != nullptr);
  CHECK(hf_last_error() != nullptr);
}

TEST_CASE("model create/get/save/load through handles") {
  const double pi[] = {0.5, 0.5};
  const double a[] = {0.9, 0.1, 0.2, 0.8};
  const double c[] = {0.7, 0.2, 0.1, 0.1, 0.3, 0.6};
  hf_model* model = nullptr;
  REQUIRE(hf_model_create(2, 3, pi, a, c, &model) == HF_OK);
  CHECK(hf_model_d(model) == 2);
  CHECK(hf_model_m(model) == 3);

  double a_back[4] = {0};
  REQUIRE(hf_model_get(model, nullptr, a_back, nullptr) == HF_OK);
  CHECK(a_back[0] == 0.9);

  const auto path = temp_path("model.json");
  REQUIRE(hf_model_save(model, path.c_str()) == HF_OK);
  hf_model* loaded = nullptr;
  REQUIRE(hf_model_load(path.c_str(), &loaded) == HF_OK);
  CHECK(hf_model_m(loaded) == 3);
  int32_t kind = -1;
  REQUIRE(hf_model_file_kind(path.c_str(), &kind) == HF_OK);
  CHECK(kind == 0);
  hf_model_free(loaded);
  hf_model_free(model);
}

TEST_CASE("invalid parameters are rejected with a message") {
  const double pi[] = {0.9, 0.9};
  const double a[] = {0.9, 0.1, 0.2, 0.8};
  const double c[] = {0.7, 0.2, 0.1, 0.1, 0.3, 0.6};
  hf_model* model = nullptr;
  CHECK(hf_model_create(2, 3, pi, a, c, &model) == HF_INVALID_ARGUMENT);
  CHECK(std::strlen(hf_last_error()) > 0);
}

TEST_CASE("generate, sample, filter and evaluate") {
  hf_generate_config cfg;
  hf_generate_config_init(&cfg);
  cfg.d = 3;
  cfg.m = 5;
  cfg.n_train = 20;
  cfg.t = 16;
  cfg.seed = 7;
  hf_model* model = nullptr;
  hf_dataset* train = nullptr;
  hf_dataset* val = nullptr;
  REQUIRE(hf_generate(&cfg, &model, &train, &val) == HF_OK);
  CHECK(hf_dataset_num_sequences(train) == 20);
  CHECK(hf_dataset_num_sequences(val) == 2);
  CHECK(hf_dataset_vocab_size(train) == 5);

  std::vector<int32_t> seq(hf_dataset_sequence_length(train, 0));
  REQUIRE(hf_dataset_sequence(train, 0, seq.data(), seq.size()) == HF_OK);
  std::vector<double> preds(seq.size() * 5);
  REQUIRE(hf_filter_run(model, seq.data(), seq.size(), preds.data()) == HF_OK);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    double row = 0.0;
    for (std::size_t k = 0; k < 5; ++k) row += preds[t * 5 + k];
    CHECK(std::abs(row - 1.0) < 1e-10);
  }

  double oracle_loss = 0.0;
  double uniform_loss = 0.0;
  REQUIRE(hf_evaluate(model, val, &oracle_loss) == HF_OK);
  REQUIRE(hf_evaluate_uniform(val, &uniform_loss) == HF_OK);
  CHECK(uniform_loss == doctest::Approx(std::log(5.0)).epsilon(1e-9));
  CHECK(oracle_loss < uniform_loss);
  CHECK(hf_perplexity(uniform_loss) == doctest::Approx(5.0).epsilon(1e-6));

  const auto path = temp_path("train.txt");
  REQUIRE(hf_dataset_save(train, path.c_str()) == HF_OK);
  hf_dataset* reloaded = nullptr;
  REQUIRE(hf_dataset_load(path.c_str(), &reloaded) == HF_OK);
  CHECK(hf_dataset_num_sequences(reloaded) == 20);
  hf_dataset_free(reloaded);

  hf_dataset_free(val);
  hf_dataset_free(train);
  hf_model_free(model);
}

TEST_CASE("belief-net training through the C API") {
  hf_generate_config gen;
  hf_generate_config_init(&gen);
  gen.d = 2;
  gen.m = 4;
  gen.n_train = 30;
  gen.t = 24;
  gen.seed = 5;
  hf_model* truth = nullptr;
  hf_dataset* train = nullptr;
  hf_dataset* val = nullptr;
  REQUIRE(hf_generate(&gen, &truth, &train, &val) == HF_OK);

  hf_train_config cfg;
  hf_train_config_init(&cfg);
  cfg.max_iters = 60;
  cfg.val_every = 20;
  cfg.lr = 0.05;
  cfg.seed = 3;
  hf_model* model = nullptr;
  hf_logits* logits = nullptr;
  hf_curve* train_curve = nullptr;
  hf_curve* val_curve = nullptr;
  REQUIRE(hf_train_beliefnet(train, val, 2, &cfg, &model, &logits, &train_curve,
                             &val_curve) == HF_OK);
  CHECK(hf_curve_size(train_curve) == 60);
  CHECK(hf_curve_size(val_curve) == 3);
  int32_t iteration = 0;
  double loss = 0.0;
  REQUIRE(hf_curve_point(val_curve, 0, &iteration, &loss) == HF_OK);
  CHECK(iteration == 20);
  CHECK(loss > 0.0);

  const auto logits_path = temp_path("logits.json");
  REQUIRE(hf_logits_save(logits, logits_path.c_str()) == HF_OK);
  hf_logits* logits_back = nullptr;
  REQUIRE(hf_logits_load(logits_path.c_str(), &logits_back) == HF_OK);
  hf_model* from_logits = nullptr;
  REQUIRE(hf_logits_to_model(logits_back, &from_logits) == HF_OK);
  double direct = 0.0;
  double via_logits = 0.0;
  REQUIRE(hf_evaluate(model, val, &direct) == HF_OK);
  REQUIRE(hf_evaluate(from_logits, val, &via_logits) == HF_OK);
  CHECK(direct == doctest::Approx(via_logits).epsilon(1e-12));

  hf_model_free(from_logits);
  hf_logits_free(logits_back);
  hf_curve_free(val_curve);
  hf_curve_free(train_curve);
  hf_logits_free(logits);
  hf_model_free(model);
  hf_dataset_free(val);
  hf_dataset_free(train);
  hf_model_free(truth);
}

TEST_CASE("Baum-Welch fit and report through the C API") {
  hf_generate_config gen;
  hf_generate_config_init(&gen);
  gen.d = 2;
  gen.m = 3;
  gen.n_train = 20;
  gen.t = 20;
  gen.seed = 11;
  hf_model* truth = nullptr;
  hf_dataset* train = nullptr;
  hf_dataset* val = nullptr;
  REQUIRE(hf_generate(&gen, &truth, &train, &val) == HF_OK);

  hf_em_config cfg;
  hf_em_config_init(&cfg);
  cfg.max_iters = 5;
  cfg.restarts = 2;
  cfg.seed = 1;
  hf_model* model = nullptr;
  hf_em_report* report = nullptr;
  REQUIRE(hf_fit_baumwelch(train, val, 2, &cfg, &model, &report) == HF_OK);
  CHECK(hf_em_report_restarts(report) == 2);
  CHECK(hf_em_report_iterations(report, 0) == 5);
  const int32_t selected = hf_em_report_selected(report);
  CHECK(selected >= 0);
  double prev = -1e300;
  for (int32_t i = 0; i < 5; ++i) {
    double ll = 0.0;
    REQUIRE(hf_em_report_loglik(report, 0, i, &ll) == HF_OK);
    CHECK(ll >= prev - 1e-9);
    prev = ll;
  }
  double val_loss = 0.0;
  REQUIRE(hf_em_report_val_loss(report, selected, &val_loss) == HF_OK);
  CHECK(val_loss > 0.0);

  hf_em_report_free(report);
  hf_model_free(model);
  hf_dataset_free(val);
  hf_dataset_free(train);
  hf_model_free(truth);
}

TEST_CASE("spectral failure surfaces as HF_RANK_DEFICIENCY") {
  hf_generate_config gen;
  hf_generate_config_init(&gen);
  gen.d = 3;
  gen.m = 2;
  gen.n_train = 30;
  gen.t = 30;
  gen.seed = 2;
  hf_dataset* train = nullptr;
  REQUIRE(hf_generate(&gen, nullptr, &train, nullptr) == HF_OK);

  hf_spectral* model = nullptr;
  CHECK(hf_spectral_fit(train, 3, &model, nullptr) == HF_RANK_DEFICIENCY);
  CHECK(std::string(hf_last_error()) == "rank deficiency");
  hf_dataset_free(train);
}

TEST_CASE("spectral fit, save, predict and evaluate") {
  hf_generate_config gen;
  hf_generate_config_init(&gen);
  gen.d = 2;
  gen.m = 4;
  gen.n_train = 60;
  gen.t = 40;
  gen.seed = 6;
  hf_dataset* train = nullptr;
  hf_dataset* val = nullptr;
  REQUIRE(hf_generate(&gen, nullptr, &train, &val) == HF_OK);

  hf_spectral* model = nullptr;
  hf_curve* rank_curve = nullptr;
  REQUIRE(hf_spectral_fit(train, 2, &model, &rank_curve) == HF_OK);
  CHECK(hf_spectral_d(model) == 2);
  CHECK(hf_curve_size(rank_curve) == 4);

  const auto path = temp_path("spectral.json");
  REQUIRE(hf_spectral_save(model, path.c_str()) == HF_OK);
  int32_t kind = -1;
  REQUIRE(hf_model_file_kind(path.c_str(), &kind) == HF_OK);
  CHECK(kind == 1);
  hf_spectral* loaded = nullptr;
  REQUIRE(hf_spectral_load(path.c_str(), &loaded) == HF_OK);

  double loss = 0.0;
  REQUIRE(hf_spectral_evaluate(loaded, val, &loss) == HF_OK);
  CHECK(loss > 0.0);
  CHECK(loss < std::log(4.0));

  hf_spectral_free(loaded);
  hf_curve_free(rank_curve);
  hf_spectral_free(model);
  hf_dataset_free(val);
  hf_dataset_free(train);
}

TEST_CASE("ingest pipeline through the C API") {
  const auto corpus_path = temp_path("corpus.txt");
  {
    std::string corpus;
    for (int i = 0; i < 400; ++i) corpus.push_back(static_cast<char>('a' + i % 7));
    std::ofstream out(corpus_path, std::ios::binary);
    out << corpus;
  }
  hf_vocab* vocab = nullptr;
  REQUIRE(hf_vocab_build_from_file(corpus_path.c_str(), &vocab) == HF_OK);
  CHECK(hf_vocab_size(vocab) == 7);

  hf_dataset* chunks = nullptr;
  REQUIRE(hf_chunk_corpus(corpus_path.c_str(), vocab, 16, 16, &chunks) == HF_OK);
  CHECK(hf_dataset_num_sequences(chunks) == 25);

  hf_dataset* train = nullptr;
  hf_dataset* val = nullptr;
  REQUIRE(hf_split(chunks, 0.2, 3, &train, &val) == HF_OK);
  CHECK(hf_dataset_num_sequences(train) == 20);
  CHECK(hf_dataset_num_sequences(val) == 5);

  const auto vocab_path = temp_path("vocab.json");
  REQUIRE(hf_vocab_save(vocab, vocab_path.c_str()) == HF_OK);
  hf_vocab* vocab_back = nullptr;
  REQUIRE(hf_vocab_load(vocab_path.c_str(), &vocab_back) == HF_OK);
  CHECK(hf_vocab_size(vocab_back) == 7);

  hf_vocab_free(vocab_back);
  hf_dataset_free(val);
  hf_dataset_free(train);
  hf_dataset_free(chunks);
  hf_vocab_free(vocab);
}

TEST_CASE("sweep through the C API") {
  hf_generate_config gen;
  hf_generate_config_init(&gen);
  gen.d = 2;
  gen.m = 4;
  gen.n_train = 15;
  gen.t = 20;
  gen.seed = 9;
  hf_model* truth = nullptr;
  hf_dataset* train = nullptr;
  hf_dataset* val = nullptr;
  REQUIRE(hf_generate(&gen, &truth, &train, &val) == HF_OK);

  hf_sweep_config cfg;
  hf_sweep_config_init(&cfg);
  cfg.beliefnet.max_iters = 20;
  cfg.em.max_iters = 2;
  cfg.em.restarts = 1;
  const int32_t dims[] = {2, 3};
  hf_sweep_report* report = nullptr;
  REQUIRE(hf_sweep(train, val, "random,oracle,beliefnet", dims, 2, 4, &cfg, truth,
                   &report) == HF_OK);
  REQUIRE(hf_sweep_report_rows(report) == 6);
  for (size_t i = 0; i < 6; ++i) {
    int32_t dim = 0;
    const char* method = nullptr;
    double loss = 0.0;
    int64_t params = 0;
    double seconds = 0.0;
    const char* status = nullptr;
    REQUIRE(hf_sweep_report_row(report, i, &dim, &method, &loss, &params, &seconds,
                                &status) == HF_OK);
    CHECK(std::string(status) == "ok");
    CHECK(loss > 0.0);
  }
  hf_sweep_report_free(report);
  hf_dataset_free(val);
  hf_dataset_free(train);
  hf_model_free(truth);
}

TEST_CASE("null arguments come back as HF_INVALID_ARGUMENT") {
  CHECK(hf_model_load(nullptr, nullptr) == HF_INVALID_ARGUMENT);
  CHECK(hf_dataset_load("x", nullptr) == HF_INVALID_ARGUMENT);
  double loss = 0.0;
  CHECK(hf_evaluate(nullptr, nullptr, &loss) == HF_INVALID_ARGUMENT);
  CHECK(hf_param_count(0, 5) == -1);
}

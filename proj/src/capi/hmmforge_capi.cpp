#include "hmmforge/hmmforge.h"

#include <cstring>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/baum_welch.hpp"
#include "core/beliefnet.hpp"
#include "core/datagen.hpp"
#include "core/eval.hpp"
#include "core/hmm.hpp"
#include "core/io.hpp"
#include "core/spectral.hpp"
#include "core/text_ingest.hpp"

struct hf_model {
  hmmforge::HmmParams params;
};
struct hf_dataset {
  hmmforge::Dataset data;
};
struct hf_vocab {
  hmmforge::CharVocab vocab;
};
struct hf_spectral {
  hmmforge::SpectralModel model;
};
struct hf_logits {
  hmmforge::LogitParams logits;
};
struct hf_curve {
  std::vector<hmmforge::CurvePoint> points;
};
struct hf_em_report {
  hmmforge::EmFitReport report;
};
struct hf_sweep_report {
  std::vector<hmmforge::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

hf_status map_code(hmmforge::ErrorCode code) {
  switch (code) {
    case hmmforge::ErrorCode::InvalidArgument:
      return HF_INVALID_ARGUMENT;
    case hmmforge::ErrorCode::Io:
      return HF_IO_ERROR;
    case hmmforge::ErrorCode::RankDeficiency:
      return HF_RANK_DEFICIENCY;
    case hmmforge::ErrorCode::Numeric:
      return HF_NUMERIC_ERROR;
  }
  return HF_ERROR;
}

template <typename F>
hf_status guarded(F&& body) {
  try {
    body();
    return HF_OK;
  } catch (const hmmforge::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HF_ERROR;
  }
}

hf_status bad_argument(const char* message) {
  g_last_error = message;
  return HF_INVALID_ARGUMENT;
}

hmmforge::TrainConfig to_core(const hf_train_config& cfg) {
  hmmforge::TrainConfig out;
  out.batch_size = cfg.batch_size;
  out.max_iters = cfg.max_iters;
  out.lr = cfg.lr;
  out.dropout = cfg.dropout;
  out.val_every = cfg.val_every;
  out.seed = cfg.seed;
  out.weight_decay = cfg.weight_decay;
  out.cosine_lr = cfg.cosine_lr != 0;
  out.patience = cfg.patience;
  return out;
}

hmmforge::EmConfig to_core(const hf_em_config& cfg) {
  hmmforge::EmConfig out;
  out.max_iters = cfg.max_iters;
  out.restarts = cfg.restarts;
  out.seed = cfg.seed;
  out.ll_tolerance = cfg.ll_tolerance;
  return out;
}

hf_curve* make_curve(std::vector<hmmforge::CurvePoint> points) {
  return new hf_curve{std::move(points)};
}

}  // namespace

extern "C" {

const char* hf_version(void) {
#ifdef HMMFORGE_VERSION
  return HMMFORGE_VERSION;
#else
  return "0.0.0";
#endif
}

const char* hf_last_error(void) { return g_last_error.c_str(); }

/* ---- models ------------------------------------------------------------ */

hf_status hf_model_create(int32_t d, int32_t m, const double* pi, const double* a,
                          const double* c, hf_model** out) {
  if (out == nullptr || pi == nullptr || a == nullptr || c == nullptr) {
    return bad_argument("hf_model_create: null argument");
  }
  return guarded([&] {
    hmmforge::HmmParams params;
    params.d = d;
    params.m = m;
    params.pi.assign(pi, pi + d);
    params.trans = hmmforge::Matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    params.emis = hmmforge::Matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(m));
    std::memcpy(params.trans.data().data(), a, sizeof(double) * static_cast<std::size_t>(d) * d);
    std::memcpy(params.emis.data().data(), c, sizeof(double) * static_cast<std::size_t>(d) * m);
    hmmforge::validate(params);
    *out = new hf_model{std::move(params)};
  });
}

hf_status hf_model_load(const char* path, hf_model** out) {
  if (path == nullptr || out == nullptr) return bad_argument("hf_model_load: null argument");
  return guarded([&] { *out = new hf_model{hmmforge::load_model(path)}; });
}

hf_status hf_model_save(const hf_model* model, const char* path) {
  if (model == nullptr || path == nullptr) return bad_argument("hf_model_save: null argument");
  return guarded([&] { hmmforge::save_model(model->params, path); });
}

int32_t hf_model_d(const hf_model* model) { return model != nullptr ? model->params.d : 0; }
int32_t hf_model_m(const hf_model* model) { return model != nullptr ? model->params.m : 0; }

hf_status hf_model_get(const hf_model* model, double* pi, double* a, double* c) {
  if (model == nullptr) return bad_argument("hf_model_get: null model");
  const auto& p = model->params;
  if (pi != nullptr) std::memcpy(pi, p.pi.data(), sizeof(double) * p.pi.size());
  if (a != nullptr) std::memcpy(a, p.trans.data().data(), sizeof(double) * p.trans.data().size());
  if (c != nullptr) std::memcpy(c, p.emis.data().data(), sizeof(double) * p.emis.data().size());
  return HF_OK;
}

void hf_model_free(hf_model* model) { delete model; }

int64_t hf_param_count(int32_t d, int32_t m) {
  if (d < 1 || m < 1) return -1;
  return hmmforge::param_count(d, m);
}

hf_status hf_model_file_kind(const char* path, int32_t* kind) {
  if (path == nullptr || kind == nullptr) return bad_argument("hf_model_file_kind: null argument");
  return guarded([&] { *kind = hmmforge::is_spectral_model_file(path) ? 1 : 0; });
}

/* ---- datasets ----------------------------------------------------------- */

hf_status hf_dataset_load(const char* path, hf_dataset** out) {
  if (path == nullptr || out == nullptr) return bad_argument("hf_dataset_load: null argument");
  return guarded([&] { *out = new hf_dataset{hmmforge::load_dataset(path)}; });
}

hf_status hf_dataset_save(const hf_dataset* dataset, const char* path) {
  if (dataset == nullptr || path == nullptr) {
    return bad_argument("hf_dataset_save: null argument");
  }
  return guarded([&] { hmmforge::save_dataset(dataset->data, path); });
}

int32_t hf_dataset_vocab_size(const hf_dataset* dataset) {
  return dataset != nullptr ? dataset->data.m : 0;
}

size_t hf_dataset_num_sequences(const hf_dataset* dataset) {
  return dataset != nullptr ? dataset->data.sequences.size() : 0;
}

size_t hf_dataset_sequence_length(const hf_dataset* dataset, size_t i) {
  if (dataset == nullptr || i >= dataset->data.sequences.size()) return 0;
  return dataset->data.sequences[i].size();
}

hf_status hf_dataset_sequence(const hf_dataset* dataset, size_t i, int32_t* out,
                              size_t capacity) {
  if (dataset == nullptr || out == nullptr) return bad_argument("hf_dataset_sequence: null argument");
  if (i >= dataset->data.sequences.size()) return bad_argument("hf_dataset_sequence: index out of range");
  const auto& seq = dataset->data.sequences[i];
  if (capacity < seq.size()) return bad_argument("hf_dataset_sequence: buffer too small");
  std::memcpy(out, seq.data(), sizeof(int32_t) * seq.size());
  return HF_OK;
}

void hf_dataset_free(hf_dataset* dataset) { delete dataset; }

hf_status hf_sample(const hf_model* model, int32_t n, int32_t t, uint64_t seed,
                    hf_dataset** out) {
  if (model == nullptr || out == nullptr) return bad_argument("hf_sample: null argument");
  return guarded([&] {
    *out = new hf_dataset{hmmforge::sample_sequences(model->params, n, t, seed)};
  });
}

/* ---- synthetic benchmark generation ------------------------------------- */

void hf_generate_config_init(hf_generate_config* cfg) {
  if (cfg == nullptr) return;
  const hmmforge::SyntheticConfig defaults;
  cfg->d = defaults.d;
  cfg->m = defaults.m;
  cfg->lambda = defaults.lambda;
  cfg->temp_trans = defaults.temp_trans;
  cfg->temp_emis = defaults.temp_emis;
  cfg->n_train = defaults.n_train;
  cfg->t = defaults.t;
  cfg->val_fraction = defaults.val_fraction;
  cfg->seed = defaults.seed;
}

hf_status hf_generate(const hf_generate_config* cfg, hf_model** model,
                      hf_dataset** train, hf_dataset** val) {
  if (cfg == nullptr) return bad_argument("hf_generate: null config");
  return guarded([&] {
    hmmforge::SyntheticConfig core;
    core.d = cfg->d;
    core.m = cfg->m;
    core.lambda = cfg->lambda;
    core.temp_trans = cfg->temp_trans;
    core.temp_emis = cfg->temp_emis;
    core.n_train = cfg->n_train;
    core.t = cfg->t;
    core.val_fraction = cfg->val_fraction;
    core.seed = cfg->seed;
    hmmforge::SyntheticInstance instance = hmmforge::make_instance(core);
    if (model != nullptr) *model = new hf_model{std::move(instance.params)};
    if (train != nullptr) *train = new hf_dataset{std::move(instance.train)};
    if (val != nullptr) *val = new hf_dataset{std::move(instance.val)};
  });
}

/* ---- character corpus ingestion ------------------------------------------ */

hf_status hf_vocab_build_from_file(const char* corpus_path, hf_vocab** out) {
  if (corpus_path == nullptr || out == nullptr) {
    return bad_argument("hf_vocab_build_from_file: null argument");
  }
  return guarded([&] {
    *out = new hf_vocab{hmmforge::build_vocab(hmmforge::read_text_file(corpus_path))};
  });
}

hf_status hf_vocab_load(const char* path, hf_vocab** out) {
  if (path == nullptr || out == nullptr) return bad_argument("hf_vocab_load: null argument");
  return guarded([&] { *out = new hf_vocab{hmmforge::load_vocab(path)}; });
}

hf_status hf_vocab_save(const hf_vocab* vocab, const char* path) {
  if (vocab == nullptr || path == nullptr) return bad_argument("hf_vocab_save: null argument");
  return guarded([&] { hmmforge::save_vocab(vocab->vocab, path); });
}

int32_t hf_vocab_size(const hf_vocab* vocab) {
  return vocab != nullptr ? vocab->vocab.size() : 0;
}

void hf_vocab_free(hf_vocab* vocab) { delete vocab; }

hf_status hf_chunk_corpus(const char* corpus_path, const hf_vocab* vocab, int32_t t,
                          int32_t stride, hf_dataset** out) {
  if (corpus_path == nullptr || vocab == nullptr || out == nullptr) {
    return bad_argument("hf_chunk_corpus: null argument");
  }
  return guarded([&] {
    *out = new hf_dataset{
        hmmforge::chunk(hmmforge::read_text_file(corpus_path), vocab->vocab, t, stride)};
  });
}

hf_status hf_split(const hf_dataset* dataset, double val_fraction, uint64_t seed,
                   hf_dataset** train, hf_dataset** val) {
  if (dataset == nullptr || train == nullptr || val == nullptr) {
    return bad_argument("hf_split: null argument");
  }
  return guarded([&] {
    auto [a, b] = hmmforge::split(dataset->data, val_fraction, seed);
    *train = new hf_dataset{std::move(a)};
    *val = new hf_dataset{std::move(b)};
  });
}

/* ---- filtering and evaluation -------------------------------------------- */

hf_status hf_filter_run(const hf_model* model, const int32_t* seq, size_t len,
                        double* out) {
  if (model == nullptr || seq == nullptr || out == nullptr) {
    return bad_argument("hf_filter_run: null argument");
  }
  return guarded([&] {
    const auto preds = hmmforge::filter_run(model->params, {seq, len});
    const auto m = static_cast<std::size_t>(model->params.m);
    for (std::size_t t = 0; t < preds.size(); ++t) {
      std::memcpy(out + t * m, preds[t].data(), sizeof(double) * m);
    }
  });
}

hf_status hf_evaluate(const hf_model* model, const hf_dataset* dataset, double* loss) {
  if (model == nullptr || dataset == nullptr || loss == nullptr) {
    return bad_argument("hf_evaluate: null argument");
  }
  return guarded([&] {
    *loss = hmmforge::evaluate(hmmforge::FilterPredictor(model->params), dataset->data);
  });
}

hf_status hf_evaluate_uniform(const hf_dataset* dataset, double* loss) {
  if (dataset == nullptr || loss == nullptr) {
    return bad_argument("hf_evaluate_uniform: null argument");
  }
  return guarded([&] {
    *loss = hmmforge::evaluate(hmmforge::UniformPredictor(dataset->data.m), dataset->data);
  });
}

double hf_perplexity(double loss_nats) { return hmmforge::perplexity(loss_nats); }

/* ---- curves -------------------------------------------------------------- */

size_t hf_curve_size(const hf_curve* curve) {
  return curve != nullptr ? curve->points.size() : 0;
}

hf_status hf_curve_point(const hf_curve* curve, size_t i, int32_t* iteration,
                         double* value) {
  if (curve == nullptr) return bad_argument("hf_curve_point: null curve");
  if (i >= curve->points.size()) return bad_argument("hf_curve_point: index out of range");
  if (iteration != nullptr) *iteration = curve->points[i].iteration;
  if (value != nullptr) *value = curve->points[i].loss;
  return HF_OK;
}

void hf_curve_free(hf_curve* curve) { delete curve; }

/* ---- Baum-Welch ----------------------------------------------------------- */

void hf_em_config_init(hf_em_config* cfg) {
  if (cfg == nullptr) return;
  const hmmforge::EmConfig defaults;
  cfg->max_iters = defaults.max_iters;
  cfg->restarts = defaults.restarts;
  cfg->seed = defaults.seed;
  cfg->ll_tolerance = defaults.ll_tolerance;
}

hf_status hf_fit_baumwelch(const hf_dataset* train, const hf_dataset* val, int32_t d,
                           const hf_em_config* cfg, hf_model** model,
                           hf_em_report** report) {
  if (train == nullptr || val == nullptr || cfg == nullptr) {
    return bad_argument("hf_fit_baumwelch: null argument");
  }
  return guarded([&] {
    auto [params, fit_report] =
        hmmforge::fit_baum_welch(train->data, d, to_core(*cfg), val->data);
    if (model != nullptr) *model = new hf_model{std::move(params)};
    if (report != nullptr) *report = new hf_em_report{std::move(fit_report)};
  });
}

int32_t hf_em_report_restarts(const hf_em_report* report) {
  return report != nullptr ? static_cast<int32_t>(report->report.loglik.size()) : 0;
}

int32_t hf_em_report_iterations(const hf_em_report* report, int32_t restart) {
  if (report == nullptr || restart < 0 ||
      static_cast<std::size_t>(restart) >= report->report.loglik.size()) {
    return 0;
  }
  return static_cast<int32_t>(report->report.loglik[static_cast<std::size_t>(restart)].size());
}

hf_status hf_em_report_loglik(const hf_em_report* report, int32_t restart,
                              int32_t iteration, double* value) {
  if (report == nullptr || value == nullptr) return bad_argument("hf_em_report_loglik: null argument");
  if (restart < 0 || static_cast<std::size_t>(restart) >= report->report.loglik.size()) {
    return bad_argument("hf_em_report_loglik: restart out of range");
  }
  const auto& trajectory = report->report.loglik[static_cast<std::size_t>(restart)];
  if (iteration < 0 || static_cast<std::size_t>(iteration) >= trajectory.size()) {
    return bad_argument("hf_em_report_loglik: iteration out of range");
  }
  *value = trajectory[static_cast<std::size_t>(iteration)];
  return HF_OK;
}

int32_t hf_em_report_selected(const hf_em_report* report) {
  return report != nullptr ? report->report.selected : -1;
}

hf_status hf_em_report_val_loss(const hf_em_report* report, int32_t restart,
                                double* value) {
  if (report == nullptr || value == nullptr) {
    return bad_argument("hf_em_report_val_loss: null argument");
  }
  if (restart < 0 || static_cast<std::size_t>(restart) >= report->report.val_loss.size()) {
    return bad_argument("hf_em_report_val_loss: restart out of range");
  }
  *value = report->report.val_loss[static_cast<std::size_t>(restart)];
  return HF_OK;
}

void hf_em_report_free(hf_em_report* report) { delete report; }

/* ---- belief-net training --------------------------------------------------- */

void hf_train_config_init(hf_train_config* cfg) {
  if (cfg == nullptr) return;
  const hmmforge::TrainConfig defaults;
  cfg->batch_size = defaults.batch_size;
  cfg->max_iters = defaults.max_iters;
  cfg->lr = defaults.lr;
  cfg->dropout = defaults.dropout;
  cfg->val_every = defaults.val_every;
  cfg->seed = defaults.seed;
  cfg->weight_decay = defaults.weight_decay;
  cfg->cosine_lr = defaults.cosine_lr ? 1 : 0;
  cfg->patience = defaults.patience;
}

hf_status hf_train_beliefnet(const hf_dataset* train, const hf_dataset* val, int32_t d,
                             const hf_train_config* cfg, hf_model** model,
                             hf_logits** logits, hf_curve** train_curve,
                             hf_curve** val_curve) {
  if (train == nullptr || val == nullptr || cfg == nullptr) {
    return bad_argument("hf_train_beliefnet: null argument");
  }
  return guarded([&] {
    hmmforge::TrainResult result = hmmforge::train(train->data, d, to_core(*cfg), val->data);
    if (model != nullptr) *model = new hf_model{std::move(result.model)};
    if (logits != nullptr) *logits = new hf_logits{std::move(result.logits)};
    if (train_curve != nullptr) *train_curve = make_curve(std::move(result.train_curve));
    if (val_curve != nullptr) *val_curve = make_curve(std::move(result.val_curve));
  });
}

hf_status hf_grid_search(const hf_dataset* train, const hf_dataset* val, int32_t d,
                         const hf_train_config* base, const double* lrs, size_t n_lrs,
                         const double* dropouts, size_t n_dropouts, hf_model** model,
                         hf_logits** logits, hf_curve** train_curve, hf_curve** val_curve,
                         double* best_lr, double* best_dropout) {
  if (train == nullptr || val == nullptr || base == nullptr || lrs == nullptr ||
      dropouts == nullptr) {
    return bad_argument("hf_grid_search: null argument");
  }
  return guarded([&] {
    hmmforge::GridResult result =
        hmmforge::grid_search(train->data, d, {lrs, n_lrs}, {dropouts, n_dropouts},
                              to_core(*base), val->data);
    if (model != nullptr) *model = new hf_model{std::move(result.best.model)};
    if (logits != nullptr) *logits = new hf_logits{std::move(result.best.logits)};
    if (train_curve != nullptr) *train_curve = make_curve(std::move(result.best.train_curve));
    if (val_curve != nullptr) *val_curve = make_curve(std::move(result.best.val_curve));
    if (best_lr != nullptr) *best_lr = result.lr;
    if (best_dropout != nullptr) *best_dropout = result.dropout;
  });
}

hf_status hf_logits_save(const hf_logits* logits, const char* path) {
  if (logits == nullptr || path == nullptr) return bad_argument("hf_logits_save: null argument");
  return guarded([&] { hmmforge::save_logits(logits->logits, path); });
}

hf_status hf_logits_load(const char* path, hf_logits** out) {
  if (path == nullptr || out == nullptr) return bad_argument("hf_logits_load: null argument");
  return guarded([&] { *out = new hf_logits{hmmforge::load_logits(path)}; });
}

hf_status hf_logits_to_model(const hf_logits* logits, hf_model** out) {
  if (logits == nullptr || out == nullptr) return bad_argument("hf_logits_to_model: null argument");
  return guarded([&] { *out = new hf_model{hmmforge::to_probs(logits->logits)}; });
}

void hf_logits_free(hf_logits* logits) { delete logits; }

/* ---- spectral method ---------------------------------------------------------- */

hf_status hf_spectral_fit(const hf_dataset* train, int32_t d, hf_spectral** model,
                          hf_curve** rank_curve) {
  if (train == nullptr || model == nullptr) return bad_argument("hf_spectral_fit: null argument");
  return guarded([&] {
    hmmforge::Moments moments = hmmforge::estimate_moments(train->data);
    hmmforge::SpectralModel spectral = hmmforge::build_observable(moments, d);
    if (rank_curve != nullptr) {
      std::vector<hmmforge::CurvePoint> points;
      points.reserve(spectral.singular_values.size());
      for (std::size_t k = 0; k < spectral.singular_values.size(); ++k) {
        points.push_back({static_cast<int>(k + 1), spectral.singular_values[k]});
      }
      *rank_curve = make_curve(std::move(points));
    }
    *model = new hf_spectral{std::move(spectral)};
  });
}

hf_status hf_spectral_load(const char* path, hf_spectral** out) {
  if (path == nullptr || out == nullptr) return bad_argument("hf_spectral_load: null argument");
  return guarded([&] { *out = new hf_spectral{hmmforge::load_spectral(path)}; });
}

hf_status hf_spectral_save(const hf_spectral* model, const char* path) {
  if (model == nullptr || path == nullptr) return bad_argument("hf_spectral_save: null argument");
  return guarded([&] { hmmforge::save_spectral(model->model, path); });
}

int32_t hf_spectral_d(const hf_spectral* model) {
  return model != nullptr ? model->model.d : 0;
}

int32_t hf_spectral_m(const hf_spectral* model) {
  return model != nullptr ? model->model.m : 0;
}

hf_status hf_spectral_predict(const hf_spectral* model, const int32_t* seq, size_t len,
                              double* out) {
  if (model == nullptr || seq == nullptr || out == nullptr) {
    return bad_argument("hf_spectral_predict: null argument");
  }
  return guarded([&] {
    const auto preds = hmmforge::spectral_predict(model->model, {seq, len});
    const auto m = static_cast<std::size_t>(model->model.m);
    for (std::size_t t = 0; t < preds.size(); ++t) {
      std::memcpy(out + t * m, preds[t].data(), sizeof(double) * m);
    }
  });
}

hf_status hf_spectral_evaluate(const hf_spectral* model, const hf_dataset* dataset,
                               double* loss) {
  if (model == nullptr || dataset == nullptr || loss == nullptr) {
    return bad_argument("hf_spectral_evaluate: null argument");
  }
  return guarded([&] {
    *loss = hmmforge::evaluate(hmmforge::SpectralPredictor(model->model), dataset->data);
  });
}

void hf_spectral_free(hf_spectral* model) { delete model; }

/* ---- dimension sweep ------------------------------------------------------------ */

void hf_sweep_config_init(hf_sweep_config* cfg) {
  if (cfg == nullptr) return;
  hf_em_config_init(&cfg->em);
  hf_train_config_init(&cfg->beliefnet);
  cfg->jobs = 1;
}

hf_status hf_sweep(const hf_dataset* train, const hf_dataset* val, const char* methods,
                   const int32_t* dims, size_t n_dims, uint64_t seed,
                   const hf_sweep_config* cfg, const hf_model* truth,
                   hf_sweep_report** report) {
  if (train == nullptr || val == nullptr || methods == nullptr || dims == nullptr ||
      cfg == nullptr || report == nullptr) {
    return bad_argument("hf_sweep: null argument");
  }
  return guarded([&] {
    std::vector<std::string> method_list;
    std::stringstream stream(methods);
    std::string item;
    while (std::getline(stream, item, ',')) {
      if (!item.empty()) method_list.push_back(item);
    }
    std::vector<int> dim_list(dims, dims + n_dims);
    hmmforge::SweepOptions options;
    options.em = to_core(cfg->em);
    options.beliefnet = to_core(cfg->beliefnet);
    options.jobs = cfg->jobs;
    options.oracle = truth != nullptr ? &truth->params : nullptr;
    *report = new hf_sweep_report{
        hmmforge::sweep(train->data, val->data, method_list, dim_list, seed, options)};
  });
}

size_t hf_sweep_report_rows(const hf_sweep_report* report) {
  return report != nullptr ? report->rows.size() : 0;
}

hf_status hf_sweep_report_row(const hf_sweep_report* report, size_t i,
                              int32_t* candidate_d, const char** method, double* loss,
                              int64_t* params, double* seconds, const char** status) {
  if (report == nullptr) return bad_argument("hf_sweep_report_row: null report");
  if (i >= report->rows.size()) return bad_argument("hf_sweep_report_row: index out of range");
  const auto& row = report->rows[i];
  if (candidate_d != nullptr) *candidate_d = row.candidate_d;
  if (method != nullptr) *method = row.method.c_str();
  if (loss != nullptr) *loss = row.loss;
  if (params != nullptr) *params = row.params;
  if (seconds != nullptr) *seconds = row.seconds;
  if (status != nullptr) *status = row.status.c_str();
  return HF_OK;
}

void hf_sweep_report_free(hf_sweep_report* report) { delete report; }

} /* extern "C" */

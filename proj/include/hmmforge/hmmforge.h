/* hmmforge — HMM learning library: forward-filter training of logit
 * parameterized HMMs, Baum-Welch EM, spectral method of moments, synthetic
 * data generation and evaluation.
 *
 * C API over an opaque-handle object model. Every fallible call returns an
 * hf_status; on failure hf_last_error() carries a message for the calling
 * thread. Handles are created by hf_*_load/hf_*_fit/... calls and must be
 * released with the matching hf_*_free.
 */
#ifndef HMMFORGE_H
#define HMMFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
  #if defined(HMMFORGE_BUILD)
    #define HMMFORGE_API __declspec(dllexport)
  #else
    #define HMMFORGE_API __declspec(dllimport)
  #endif
#else
  #define HMMFORGE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hf_status {
  HF_OK = 0,
  HF_ERROR = 1,            /* unexpected failure */
  HF_INVALID_ARGUMENT = 2, /* bad flag/shape/value or malformed input */
  HF_IO_ERROR = 3,
  HF_RANK_DEFICIENCY = 4,  /* spectral construction unsupported by the moments */
  HF_NUMERIC_ERROR = 5     /* e.g. gradient overflow, no stationary distribution */
} hf_status;

HMMFORGE_API const char* hf_version(void);
/* Message of the most recent failing call on this thread; never NULL. */
HMMFORGE_API const char* hf_last_error(void);

typedef struct hf_model hf_model;           /* HMM (pi, A, C) */
typedef struct hf_dataset hf_dataset;       /* observation sequences + vocab size */
typedef struct hf_vocab hf_vocab;           /* character vocabulary */
typedef struct hf_spectral hf_spectral;     /* observable representation */
typedef struct hf_logits hf_logits;         /* unconstrained softmax weights */
typedef struct hf_curve hf_curve;           /* (iteration, value) series */
typedef struct hf_em_report hf_em_report;   /* per-restart EM trajectories */
typedef struct hf_sweep_report hf_sweep_report;

/* ---- models ------------------------------------------------------------ */

/* pi has length d; a and c are row-major d*d and d*m. */
HMMFORGE_API hf_status hf_model_create(int32_t d, int32_t m, const double* pi,
                                       const double* a, const double* c,
                                       hf_model** out);
HMMFORGE_API hf_status hf_model_load(const char* path, hf_model** out);
HMMFORGE_API hf_status hf_model_save(const hf_model* model, const char* path);
HMMFORGE_API int32_t hf_model_d(const hf_model* model);
HMMFORGE_API int32_t hf_model_m(const hf_model* model);
/* Buffers must hold d, d*d and d*m doubles respectively; NULL skips a field. */
HMMFORGE_API hf_status hf_model_get(const hf_model* model, double* pi, double* a,
                                    double* c);
HMMFORGE_API void hf_model_free(hf_model* model);

/* Logit count of the softmax parameterization: d + d^2 + d*m. */
HMMFORGE_API int64_t hf_param_count(int32_t d, int32_t m);

/* Sniffs a model file: 0 = HMM model, 1 = spectral model. */
HMMFORGE_API hf_status hf_model_file_kind(const char* path, int32_t* kind);

/* ---- datasets ----------------------------------------------------------- */

HMMFORGE_API hf_status hf_dataset_load(const char* path, hf_dataset** out);
HMMFORGE_API hf_status hf_dataset_save(const hf_dataset* dataset, const char* path);
HMMFORGE_API int32_t hf_dataset_vocab_size(const hf_dataset* dataset);
HMMFORGE_API size_t hf_dataset_num_sequences(const hf_dataset* dataset);
HMMFORGE_API size_t hf_dataset_sequence_length(const hf_dataset* dataset, size_t i);
HMMFORGE_API hf_status hf_dataset_sequence(const hf_dataset* dataset, size_t i,
                                           int32_t* out, size_t capacity);
HMMFORGE_API void hf_dataset_free(hf_dataset* dataset);

/* Ancestral sampling; deterministic given seed. */
HMMFORGE_API hf_status hf_sample(const hf_model* model, int32_t n, int32_t t,
                                 uint64_t seed, hf_dataset** out);

/* ---- synthetic benchmark generation ------------------------------------- */

typedef struct hf_generate_config {
  int32_t d;
  int32_t m;
  double lambda;      /* weight on the cyclic transition part */
  double temp_trans;  /* softmax temperature of the random transition part */
  double temp_emis;   /* softmax temperature of the emission matrix */
  int32_t n_train;
  int32_t t;
  double val_fraction;
  uint64_t seed;
} hf_generate_config;

HMMFORGE_API void hf_generate_config_init(hf_generate_config* cfg);
HMMFORGE_API hf_status hf_generate(const hf_generate_config* cfg, hf_model** model,
                                   hf_dataset** train, hf_dataset** val);

/* ---- character corpus ingestion ------------------------------------------ */

HMMFORGE_API hf_status hf_vocab_build_from_file(const char* corpus_path, hf_vocab** out);
HMMFORGE_API hf_status hf_vocab_load(const char* path, hf_vocab** out);
HMMFORGE_API hf_status hf_vocab_save(const hf_vocab* vocab, const char* path);
HMMFORGE_API int32_t hf_vocab_size(const hf_vocab* vocab);
HMMFORGE_API void hf_vocab_free(hf_vocab* vocab);

/* Fixed-length windows over the encoded corpus (stride == t: non-overlapping). */
HMMFORGE_API hf_status hf_chunk_corpus(const char* corpus_path, const hf_vocab* vocab,
                                       int32_t t, int32_t stride, hf_dataset** out);
/* Seeded shuffle split; the last ceil(val_fraction*N) sequences go to val. */
HMMFORGE_API hf_status hf_split(const hf_dataset* dataset, double val_fraction,
                                uint64_t seed, hf_dataset** train, hf_dataset** val);

/* ---- filtering and evaluation -------------------------------------------- */

/* out must hold len*m doubles; row t is the next-observation distribution
 * given seq[0..t]. */
HMMFORGE_API hf_status hf_filter_run(const hf_model* model, const int32_t* seq,
                                     size_t len, double* out);
/* Mean per-sequence autoregressive cross-entropy (nats) of the filter. */
HMMFORGE_API hf_status hf_evaluate(const hf_model* model, const hf_dataset* dataset,
                                   double* loss);
/* Uniform-predictor baseline on the dataset (equals ln m). */
HMMFORGE_API hf_status hf_evaluate_uniform(const hf_dataset* dataset, double* loss);
HMMFORGE_API double hf_perplexity(double loss_nats);

/* ---- curves -------------------------------------------------------------- */

HMMFORGE_API size_t hf_curve_size(const hf_curve* curve);
HMMFORGE_API hf_status hf_curve_point(const hf_curve* curve, size_t i,
                                      int32_t* iteration, double* value);
HMMFORGE_API void hf_curve_free(hf_curve* curve);

/* ---- Baum-Welch ----------------------------------------------------------- */

typedef struct hf_em_config {
  int32_t max_iters;
  int32_t restarts;
  uint64_t seed;
  double ll_tolerance; /* 0 disables early stopping */
} hf_em_config;

HMMFORGE_API void hf_em_config_init(hf_em_config* cfg);
HMMFORGE_API hf_status hf_fit_baumwelch(const hf_dataset* train, const hf_dataset* val,
                                        int32_t d, const hf_em_config* cfg,
                                        hf_model** model, hf_em_report** report);
HMMFORGE_API int32_t hf_em_report_restarts(const hf_em_report* report);
HMMFORGE_API int32_t hf_em_report_iterations(const hf_em_report* report, int32_t restart);
HMMFORGE_API hf_status hf_em_report_loglik(const hf_em_report* report, int32_t restart,
                                           int32_t iteration, double* value);
HMMFORGE_API int32_t hf_em_report_selected(const hf_em_report* report);
HMMFORGE_API hf_status hf_em_report_val_loss(const hf_em_report* report, int32_t restart,
                                             double* value);
HMMFORGE_API void hf_em_report_free(hf_em_report* report);

/* ---- belief-net training --------------------------------------------------- */

typedef struct hf_train_config {
  int32_t batch_size;
  int32_t max_iters;
  double lr;
  double dropout;   /* element-wise dropout on the belief state before the
                     * transition step (train-time only) */
  int32_t val_every;
  uint64_t seed;
  double weight_decay;
  int32_t cosine_lr; /* nonzero enables cosine decay; constant otherwise */
  int32_t patience;  /* early stop after this many non-improving validations */
} hf_train_config;

HMMFORGE_API void hf_train_config_init(hf_train_config* cfg);
/* Mini-batch AdamW training through the forward filter. train_curve records
 * every iteration, val_curve every val_every iterations. Any output pointer
 * may be NULL. */
HMMFORGE_API hf_status hf_train_beliefnet(const hf_dataset* train, const hf_dataset* val,
                                          int32_t d, const hf_train_config* cfg,
                                          hf_model** model, hf_logits** logits,
                                          hf_curve** train_curve, hf_curve** val_curve);
/* Grid search over (lr, dropout); lowest final validation loss wins, ties by
 * lower lr then lower dropout. */
HMMFORGE_API hf_status hf_grid_search(const hf_dataset* train, const hf_dataset* val,
                                      int32_t d, const hf_train_config* base,
                                      const double* lrs, size_t n_lrs,
                                      const double* dropouts, size_t n_dropouts,
                                      hf_model** model, hf_logits** logits,
                                      hf_curve** train_curve, hf_curve** val_curve,
                                      double* best_lr, double* best_dropout);
HMMFORGE_API hf_status hf_logits_save(const hf_logits* logits, const char* path);
HMMFORGE_API hf_status hf_logits_load(const char* path, hf_logits** out);
HMMFORGE_API hf_status hf_logits_to_model(const hf_logits* logits, hf_model** out);
HMMFORGE_API void hf_logits_free(hf_logits* logits);

/* ---- spectral method ---------------------------------------------------------- */

/* Moment estimation + observable representation at rank d. Fails with
 * HF_RANK_DEFICIENCY when the d-th singular value of the pair moments is
 * missing or below threshold. rank_curve (optional) gets (k, sigma_k). */
HMMFORGE_API hf_status hf_spectral_fit(const hf_dataset* train, int32_t d,
                                       hf_spectral** model, hf_curve** rank_curve);
HMMFORGE_API hf_status hf_spectral_load(const char* path, hf_spectral** out);
HMMFORGE_API hf_status hf_spectral_save(const hf_spectral* model, const char* path);
HMMFORGE_API int32_t hf_spectral_d(const hf_spectral* model);
HMMFORGE_API int32_t hf_spectral_m(const hf_spectral* model);
HMMFORGE_API hf_status hf_spectral_predict(const hf_spectral* model, const int32_t* seq,
                                           size_t len, double* out);
HMMFORGE_API hf_status hf_spectral_evaluate(const hf_spectral* model,
                                            const hf_dataset* dataset, double* loss);
HMMFORGE_API void hf_spectral_free(hf_spectral* model);

/* ---- dimension sweep ------------------------------------------------------------ */

typedef struct hf_sweep_config {
  hf_em_config em;
  hf_train_config beliefnet;
  int32_t jobs; /* parallel cells; 1 = sequential */
} hf_sweep_config;

HMMFORGE_API void hf_sweep_config_init(hf_sweep_config* cfg);
/* methods is a comma-separated subset of
 * "beliefnet,baumwelch,spectral,random,oracle"; oracle requires truth. */
HMMFORGE_API hf_status hf_sweep(const hf_dataset* train, const hf_dataset* val,
                                const char* methods, const int32_t* dims, size_t n_dims,
                                uint64_t seed, const hf_sweep_config* cfg,
                                const hf_model* truth, hf_sweep_report** report);
HMMFORGE_API size_t hf_sweep_report_rows(const hf_sweep_report* report);
/* Strings stay valid until the report is freed. A row failed iff status is
 * not "ok"; its loss is NaN. */
HMMFORGE_API hf_status hf_sweep_report_row(const hf_sweep_report* report, size_t i,
                                           int32_t* candidate_d, const char** method,
                                           double* loss, int64_t* params,
                                           double* seconds, const char** status);
HMMFORGE_API void hf_sweep_report_free(hf_sweep_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HMMFORGE_H */

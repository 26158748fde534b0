#pragma once

#include <string>
#include <vector>

#include "core/beliefnet.hpp"
#include "core/hmm.hpp"
#include "core/spectral.hpp"
#include "core/text_ingest.hpp"

namespace hmmforge {

// Dataset text format: first line "#hmmforge-seq v1 m=<int>", then one
// sequence per line as space-separated decimal token ids.
void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

// Model JSON: {"version":1,"d":..,"m":..,"pi":[..],"A":[[..],..],"C":[[..],..]}
void save_model(const HmmParams& params, const std::string& path);
HmmParams load_model(const std::string& path);

// Logits JSON: {"version":1,"pi_logits":[..],"a_logits":[[..]],"c_logits":[[..]]}
void save_logits(const LogitParams& logits, const std::string& path);
LogitParams load_logits(const std::string& path);

// Spectral JSON: {"version":1,"d":..,"m":..,"b0":[..],"binf":[..],"B":[[[..]]],"U":[[..]]}
void save_spectral(const SpectralModel& model, const std::string& path);
SpectralModel load_spectral(const std::string& path);

// Vocabulary sidecar JSON: {"version":1,"glyphs":["a","b",...]}
void save_vocab(const CharVocab& vocab, const std::string& path);
CharVocab load_vocab(const std::string& path);

// True when the JSON at path is a spectral model rather than an HMM.
bool is_spectral_model_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// "iteration,loss" CSV with full round-trip precision.
void save_curve_csv(const std::vector<CurvePoint>& curve, const std::string& path);
std::vector<CurvePoint> load_curve_csv(const std::string& path);

}  // namespace hmmforge

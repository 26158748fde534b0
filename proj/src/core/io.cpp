#include "core/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace hmmforge {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, path + ": " + e.what());
  }
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << j.dump(2) << "\n";
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorCode::Io, std::string("malformed matrix: ") + what);
  }
  Matrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (j[i].size() != m.cols()) {
      throw Error(ErrorCode::Io, std::string("ragged matrix: ") + what);
    }
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

}  // namespace

void save_dataset(const Dataset& dataset, const std::string& path) {
  validate(dataset);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << "#hmmforge-seq v1 m=" << dataset.m << "\n";
  for (const auto& seq : dataset.sequences) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i > 0) out << ' ';
      out << seq[i];
    }
    out << "\n";
  }
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::string header;
  std::getline(in, header);
  int m = 0;
  if (std::sscanf(header.c_str(), "#hmmforge-seq v1 m=%d", &m) != 1) {
    throw Error(ErrorCode::Io, path + ": not a hmmforge-seq v1 file");
  }
  Dataset dataset;
  dataset.m = m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<std::int32_t> seq;
    std::int32_t token = 0;
    while (row >> token) seq.push_back(token);
    if (!row.eof()) {
      throw Error(ErrorCode::Io, path + ": malformed sequence line");
    }
    dataset.sequences.push_back(std::move(seq));
  }
  validate(dataset);
  return dataset;
}

void save_model(const HmmParams& params, const std::string& path) {
  validate(params);
  json j;
  j["version"] = 1;
  j["d"] = params.d;
  j["m"] = params.m;
  j["pi"] = params.pi;
  j["A"] = matrix_to_json(params.trans);
  j["C"] = matrix_to_json(params.emis);
  write_json(j, path);
}

HmmParams load_model(const std::string& path) {
  const json j = read_json(path);
  if (!j.contains("pi") || !j.contains("A") || !j.contains("C")) {
    throw Error(ErrorCode::Io, path + ": not a model file");
  }
  HmmParams params;
  params.d = j.at("d").get<int>();
  params.m = j.at("m").get<int>();
  params.pi = j.at("pi").get<std::vector<double>>();
  params.trans = matrix_from_json(j.at("A"), "A");
  params.emis = matrix_from_json(j.at("C"), "C");
  validate(params);
  return params;
}

void save_logits(const LogitParams& logits, const std::string& path) {
  json j;
  j["version"] = 1;
  j["pi_logits"] = logits.pi;
  j["a_logits"] = matrix_to_json(logits.trans);
  j["c_logits"] = matrix_to_json(logits.emis);
  write_json(j, path);
}

LogitParams load_logits(const std::string& path) {
  const json j = read_json(path);
  LogitParams logits;
  logits.pi = j.at("pi_logits").get<std::vector<double>>();
  logits.trans = matrix_from_json(j.at("a_logits"), "a_logits");
  logits.emis = matrix_from_json(j.at("c_logits"), "c_logits");
  return logits;
}

void save_spectral(const SpectralModel& model, const std::string& path) {
  json j;
  j["version"] = 1;
  j["d"] = model.d;
  j["m"] = model.m;
  j["b0"] = model.b0;
  j["binf"] = model.binf;
  json ops = json::array();
  for (const auto& bk : model.b_ops) ops.push_back(matrix_to_json(bk));
  j["B"] = std::move(ops);
  j["U"] = matrix_to_json(model.u);
  write_json(j, path);
}

SpectralModel load_spectral(const std::string& path) {
  const json j = read_json(path);
  if (!j.contains("b0") || !j.contains("B")) {
    throw Error(ErrorCode::Io, path + ": not a spectral model file");
  }
  SpectralModel model;
  model.d = j.at("d").get<int>();
  model.m = j.at("m").get<int>();
  model.b0 = j.at("b0").get<std::vector<double>>();
  model.binf = j.at("binf").get<std::vector<double>>();
  for (const auto& bk : j.at("B")) {
    model.b_ops.push_back(matrix_from_json(bk, "B"));
  }
  model.u = matrix_from_json(j.at("U"), "U");
  return model;
}

bool is_spectral_model_file(const std::string& path) {
  const json j = read_json(path);
  return j.contains("b0") && j.contains("B");
}

void save_vocab(const CharVocab& vocab, const std::string& path) {
  json j;
  j["version"] = 1;
  json glyphs = json::array();
  for (char32_t cp : vocab.glyphs) glyphs.push_back(encode_utf8(cp));
  j["glyphs"] = std::move(glyphs);
  write_json(j, path);
}

CharVocab load_vocab(const std::string& path) {
  const json j = read_json(path);
  CharVocab vocab;
  for (const auto& glyph : j.at("glyphs")) {
    const auto points = decode_utf8(glyph.get<std::string>());
    if (points.size() != 1) {
      throw Error(ErrorCode::Io, path + ": glyph is not a single character");
    }
    vocab.index[points[0]] = static_cast<std::int32_t>(vocab.glyphs.size());
    vocab.glyphs.push_back(points[0]);
  }
  return vocab;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << content;
}

void save_curve_csv(const std::vector<CurvePoint>& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << "iteration,loss\n";
  out << std::setprecision(17);
  for (const auto& point : curve) out << point.iteration << ',' << point.loss << "\n";
}

std::vector<CurvePoint> load_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line != "iteration,loss") {
    throw Error(ErrorCode::Io, path + ": unexpected CSV header");
  }
  std::vector<CurvePoint> curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CurvePoint point;
    if (std::sscanf(line.c_str(), "%d,%lf", &point.iteration, &point.loss) != 2) {
      throw Error(ErrorCode::Io, path + ": malformed CSV row");
    }
    curve.push_back(point);
  }
  return curve;
}

}  // namespace hmmforge

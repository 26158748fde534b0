#include "core/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hmmforge {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  }
  return out;
}

Matrix from_eigen(const Eigen::MatrixXd& m) {
  Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    }
  }
  return out;
}

// Moore-Penrose pseudoinverse via SVD with relative cutoff 1e-10 * sigma_max.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? 1e-10 * sv(0) : 0.0;
  Eigen::VectorXd inv = sv;
  for (Eigen::Index k = 0; k < inv.size(); ++k) {
    inv(k) = sv(k) > cutoff ? 1.0 / sv(k) : 0.0;
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

Moments estimate_moments(const Dataset& dataset) {
  validate(dataset);
  const auto m = static_cast<std::size_t>(dataset.m);
  Moments out;
  out.m = dataset.m;
  out.p1.assign(m, 0.0);
  out.p21 = Matrix(m, m, 0.0);
  out.p3.assign(m, Matrix(m, m, 0.0));

  std::size_t windows = 0;
  for (const auto& seq : dataset.sequences) {
    if (seq.size() < 3) continue;
    for (std::size_t t = 0; t + 2 < seq.size(); ++t) {
      const auto a = static_cast<std::size_t>(seq[t]);
      const auto b = static_cast<std::size_t>(seq[t + 1]);
      const auto c = static_cast<std::size_t>(seq[t + 2]);
      out.p1[a] += 1.0;
      out.p21(b, a) += 1.0;
      out.p3[b](c, a) += 1.0;
      ++windows;
    }
  }
  if (windows == 0) {
    throw Error(ErrorCode::InvalidArgument, "no length-3 windows in dataset");
  }
  const double norm = 1.0 / static_cast<double>(windows);
  for (double& x : out.p1) x *= norm;
  for (double& x : out.p21.data()) x *= norm;
  for (auto& slab : out.p3) {
    for (double& x : slab.data()) x *= norm;
  }
  return out;
}

std::vector<double> stationary_distribution(const Matrix& trans) {
  const std::size_t d = trans.rows();
  std::vector<double> v(d, 1.0 / static_cast<double>(d));
  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<double> next = left_multiply(v, trans);
    floor_normalize(next);
    double diff = 0.0;
    for (std::size_t i = 0; i < d; ++i) diff = std::max(diff, std::abs(next[i] - v[i]));
    v = std::move(next);
    if (diff < 1e-14) return v;
  }
  throw Error(ErrorCode::Numeric, "no stationary distribution");
}

Moments exact_moments(const HmmParams& params) {
  validate(params);
  const auto d = static_cast<std::size_t>(params.d);
  const auto m = static_cast<std::size_t>(params.m);
  const std::vector<double> stat = stationary_distribution(params.trans);

  Moments out;
  out.m = params.m;
  out.p1.assign(m, 0.0);
  out.p21 = Matrix(m, m, 0.0);
  out.p3.assign(m, Matrix(m, m, 0.0));

  // weight1(i, z) = P(X_t = i, Z_t = z) under stationarity.
  Matrix weight1(d, m);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t z = 0; z < m; ++z) weight1(i, z) = stat[i] * params.emis(i, z);
  }
  for (std::size_t z = 0; z < m; ++z) {
    for (std::size_t i = 0; i < d; ++i) out.p1[z] += weight1(i, z);
  }

  // weight2(j, z) = P(X_{t+1} = j, Z_t = z)
  Matrix weight2(d, m, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double aij = params.trans(i, j);
      if (aij == 0.0) continue;
      for (std::size_t z = 0; z < m; ++z) weight2(j, z) += weight1(i, z) * aij;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t z = 0; z < m; ++z) {
      const double w = weight2(j, z);
      if (w == 0.0) continue;
      for (std::size_t zp = 0; zp < m; ++zp) out.p21(zp, z) += w * params.emis(j, zp);
    }
  }

  // weight3(l, z, k) = P(X_{t+2} = l, Z_{t+1} = k, Z_t = z)
  for (std::size_t k = 0; k < m; ++k) {
    Matrix weight3(d, m, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t z = 0; z < m; ++z) {
        const double w = weight2(j, z) * params.emis(j, k);
        if (w == 0.0) continue;
        for (std::size_t l = 0; l < d; ++l) weight3(l, z) += w * params.trans(j, l);
      }
    }
    auto& slab = out.p3[k];
    for (std::size_t l = 0; l < d; ++l) {
      for (std::size_t z = 0; z < m; ++z) {
        const double w = weight3(l, z);
        if (w == 0.0) continue;
        for (std::size_t zpp = 0; zpp < m; ++zpp) {
          slab(zpp, z) += w * params.emis(l, zpp);
        }
      }
    }
  }
  return out;
}

SpectralModel build_observable(const Moments& moments, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
  const auto m = static_cast<std::size_t>(moments.m);
  const Eigen::MatrixXd p21 = to_eigen(moments.p21);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(p21, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();

  SpectralModel model;
  model.d = d;
  model.m = moments.m;
  model.singular_values.assign(sv.data(), sv.data() + sv.size());
  model.effective_rank = 0;
  for (double s : model.singular_values) {
    if (s >= kRankThreshold) ++model.effective_rank;
  }
  if (d > moments.m || model.singular_values[static_cast<std::size_t>(d) - 1] < kRankThreshold) {
    throw Error(ErrorCode::RankDeficiency, "rank deficiency");
  }

  const Eigen::MatrixXd u = svd.matrixU().leftCols(d);  // m x d
  const Eigen::VectorXd p1 =
      Eigen::Map<const Eigen::VectorXd>(moments.p1.data(), static_cast<Eigen::Index>(m));

  const Eigen::VectorXd b0 = u.transpose() * p1;
  const Eigen::VectorXd binf = pseudo_inverse(p21.transpose() * u) * p1;
  const Eigen::MatrixXd proj = pseudo_inverse(u.transpose() * p21);  // m x d

  model.b0.assign(b0.data(), b0.data() + b0.size());
  model.binf.assign(binf.data(), binf.data() + binf.size());
  model.u = from_eigen(u);
  model.b_ops.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Eigen::MatrixXd bk = u.transpose() * to_eigen(moments.p3[k]) * proj;
    model.b_ops.push_back(from_eigen(bk));
  }
  return model;
}

std::vector<double> repair_prediction(std::vector<double> raw) {
  double min_positive = 0.0;
  bool has_positive = false;
  for (double x : raw) {
    if (x > 0.0 && (!has_positive || x < min_positive)) {
      min_positive = x;
      has_positive = true;
    }
  }
  if (!has_positive) {
    const double uniform = 1.0 / static_cast<double>(raw.size());
    for (double& x : raw) x = uniform;
    return raw;
  }
  double total = 0.0;
  for (double& x : raw) {
    if (x < 0.0) x = min_positive;
    total += x;
  }
  for (double& x : raw) x /= total;
  return raw;
}

std::vector<std::vector<double>> spectral_predict(const SpectralModel& model,
                                                  std::span<const std::int32_t> seq) {
  if (seq.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence");
  const auto d = static_cast<std::size_t>(model.d);
  const auto m = static_cast<std::size_t>(model.m);

  // score(k, :) = binf^T B_k, so the raw prediction vector is score * b.
  Matrix score(m, d, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const Matrix& bk = model.b_ops[k];
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) acc += model.binf[i] * bk(i, j);
      score(k, j) = acc;
    }
  }

  std::vector<double> b = model.b0;
  std::vector<std::vector<double>> out;
  out.reserve(seq.size());
  for (std::int32_t z : seq) {
    if (z < 0 || z >= model.m) {
      throw Error(ErrorCode::InvalidArgument, "observation out of range");
    }
    const Matrix& bk = model.b_ops[static_cast<std::size_t>(z)];
    std::vector<double> next(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += bk(i, j) * b[j];
      next[i] = acc;
    }
    const double denom = dot(model.binf, next);
    if (denom == 0.0) {
      b = model.b0;  // stated reset rule
    } else {
      for (double& x : next) x /= denom;
      b = std::move(next);
    }
    std::vector<double> raw(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) raw[k] = dot(score.row(k), b);
    out.push_back(repair_prediction(std::move(raw)));
  }
  return out;
}

}  // namespace hmmforge

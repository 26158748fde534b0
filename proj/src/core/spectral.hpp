#pragma once

#include <cstdint>
#include <vector>

#include "core/hmm.hpp"

namespace hmmforge {

// Singular values of p21 below kRankThreshold mean the requested rank is not
// supported by the pair moments.
inline constexpr double kRankThreshold = 1e-10;

// Empirical (or analytic) low-order observation moments.
//   p1[z]        P(Z_t = z)
//   p21(z', z)   P(Z_{t+1} = z', Z_t = z)
//   p3[k](z'',z) P(Z_{t+2} = z'', Z_{t+1} = k, Z_t = z)
struct Moments {
  int m = 0;
  std::vector<double> p1;
  Matrix p21;
  std::vector<Matrix> p3;
};

// Observable representation (b0, binf, {B_k}) with the retained left singular
// basis u (m x d) and the full singular spectrum of p21 for rank reporting.
struct SpectralModel {
  int d = 0;
  int m = 0;
  std::vector<double> b0;
  std::vector<double> binf;
  std::vector<Matrix> b_ops;
  Matrix u;
  std::vector<double> singular_values;
  int effective_rank = 0;
};

// Counts every overlapping length-3 window across the dataset; p21 and p1 are
// marginals of the same window counts. Sequences shorter than 3 are skipped.
Moments estimate_moments(const Dataset& dataset);

// Closed-form moments of an HMM under its stationary state distribution.
Moments exact_moments(const HmmParams& params);

// Stationary distribution of a row-stochastic matrix by power iteration;
// throws Error{Numeric} if it does not converge.
std::vector<double> stationary_distribution(const Matrix& trans);

// SVD of p21, retain the top-d left singular vectors, apply the
// pseudoinverse formulas. Throws Error{RankDeficiency} when the d-th singular
// value is missing or below kRankThreshold.
SpectralModel build_observable(const Moments& moments, int d);

// Recursive state update with reset on zero normalizer; per-step predictions
// are repaired (negatives replaced by the smallest positive entry, uniform if
// none) and renormalized.
std::vector<std::vector<double>> spectral_predict(const SpectralModel& model,
                                                  std::span<const std::int32_t> seq);

// Exposed for the prediction path and its tests.
std::vector<double> repair_prediction(std::vector<double> raw);

}  // namespace hmmforge

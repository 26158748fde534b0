#include <cmath>

#include "core/datagen.hpp"
#include "core/eval.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace hmmforge;

TEST_CASE("uniform predictor scores exactly ln m") {
  for (int m : {2, 32, 82, 128}) {
    Dataset data;
    data.m = m;
    data.sequences = {{0, 1, 0, 1, 1}, {1, 0, 0, 0, 1}};
    CHECK(evaluate(UniformPredictor(m), data) ==
          doctest::Approx(std::log(static_cast<double>(m))).epsilon(1e-9));
  }
}

TEST_CASE("perplexity is exp of the loss and monotone") {
  CHECK(perplexity(0.0) == doctest::Approx(1.0));
  CHECK(perplexity(std::log(82.0)) == doctest::Approx(82.0).epsilon(1e-9));
  CHECK(perplexity(2.002) == doctest::Approx(7.4023).epsilon(1e-3));
  CHECK(perplexity(1.5) < perplexity(1.6));
}

TEST_CASE("vocabulary mismatch is rejected") {
  Dataset data;
  data.m = 4;
  data.sequences = {{0, 1, 2, 3}};
  CHECK_THROWS_AS(evaluate(UniformPredictor(5), data), Error);
}

TEST_CASE("perfect deterministic predictor scores zero") {
  HmmParams p;
  p.d = 2;
  p.m = 2;
  p.pi = {1.0, 0.0};
  p.trans = Matrix(2, 2, 0.0);
  p.trans(0, 1) = 1.0;
  p.trans(1, 0) = 1.0;
  p.emis = Matrix(2, 2, 0.0);
  p.emis(0, 0) = 1.0;
  p.emis(1, 1) = 1.0;
  auto data = sample_sequences(p, 3, 12, 0);
  CHECK(evaluate(FilterPredictor(p), data) == doctest::Approx(0.0));
}

TEST_CASE("the true filter is a statistical floor for other models") {
  SyntheticConfig cfg;
  cfg.d = 4;
  cfg.m = 8;
  cfg.n_train = 10;
  cfg.t = 128;
  cfg.seed = 40;
  auto instance = make_instance(cfg);
  // validation sets of >= 100*T tokens
  auto big_val = sample_sequences(instance.params, 150, 128, 99);
  const double oracle_loss = evaluate(FilterPredictor(instance.params), big_val);

  CHECK(oracle_loss <= evaluate(UniformPredictor(8), big_val) + 0.02);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto other = oracle::random_hmm(4, 8, 500 + seed);
    CHECK(oracle_loss <= evaluate(FilterPredictor(other), big_val) + 0.02);
  }
}

TEST_CASE("sweep: random-only report is ln m in every row") {
  SyntheticConfig cfg;
  cfg.d = 2;
  cfg.m = 4;
  cfg.n_train = 6;
  cfg.t = 12;
  cfg.seed = 3;
  auto instance = make_instance(cfg);
  SweepOptions options;
  auto rows = sweep(instance.train, instance.val, {"random"}, {2, 4}, 0, options);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.status == "ok");
    CHECK(row.loss == doctest::Approx(std::log(4.0)).epsilon(1e-9));
  }
}

TEST_CASE("sweep records spectral rank deficiency and keeps going") {
  SyntheticConfig cfg;
  cfg.d = 3;
  cfg.m = 4;
  cfg.n_train = 40;
  cfg.t = 32;
  cfg.seed = 12;
  auto instance = make_instance(cfg);
  SweepOptions options;
  options.oracle = &instance.params;
  auto rows = sweep(instance.train, instance.val, {"spectral", "oracle"}, {2, 8}, 1,
                    options);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].method == "spectral");
  CHECK(rows[1].candidate_d == 8);  // d > m must fail
  CHECK(rows[1].status == "rank deficiency");
  CHECK(std::isnan(rows[1].loss));
  CHECK(rows[2].method == "oracle");
  CHECK(rows[2].status == "ok");
}

TEST_CASE("sweep rows are independent of the worker count") {
  SyntheticConfig cfg;
  cfg.d = 2;
  cfg.m = 4;
  cfg.n_train = 15;
  cfg.t = 24;
  cfg.seed = 21;
  auto instance = make_instance(cfg);
  SweepOptions sequential;
  sequential.beliefnet.max_iters = 30;
  sequential.em.max_iters = 3;
  sequential.em.restarts = 2;
  SweepOptions parallel = sequential;
  parallel.jobs = 4;

  const std::vector<std::string> methods = {"beliefnet", "baumwelch", "random"};
  auto a = sweep(instance.train, instance.val, methods, {2, 3}, 5, sequential);
  auto b = sweep(instance.train, instance.val, methods, {2, 3}, 5, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].method == b[i].method);
    CHECK(a[i].candidate_d == b[i].candidate_d);
    CHECK(a[i].loss == b[i].loss);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sfc/features/embedding.hpp"
#include "sfc/intrinsic/distillation.hpp"
#include "sfc/intrinsic/forward_model.hpp"
#include "sfc/intrinsic/normalizer.hpp"

using namespace sfc;
using namespace sfc::intrinsic;

namespace {

std::shared_ptr<const features::Embedding> one_hot(int n) {
  return std::make_shared<const features::Embedding>(features::Embedding::one_hot(n));
}

}  // namespace

TEST_CASE("running stats match batch formulas") {
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> dist(0.0, 1.5);
  std::vector<double> xs(5000);
  RunningStats stats;
  for (double& x : xs) {
    x = dist(rng);
    stats.push(x);
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  CHECK(stats.count() == 5000);
  CHECK(stats.mean() == doctest::Approx(mean).epsilon(1e-12));
  CHECK(std::abs(stats.variance() - var) < 1e-9 * std::max(1.0, var));
  CHECK(stats.variance() >= 0.0);
}

TEST_CASE("normalizer degenerate start and floor") {
  Normalizer n;
  CHECK(n.current_std() == 1.0);
  CHECK(n.normalize(2.5) == 2.5);  // std reported as 1 before two samples
  CHECK(n.extrinsic_scale() == doctest::Approx(3.0 * 2.5 / 0.01));

  Normalizer constant;
  double last = 0.0;
  for (int i = 0; i < 50; ++i) last = constant.normalize(0.2);
  CHECK(last == doctest::Approx(0.2 / Normalizer::kStdFloor));
  CHECK(constant.floored_count() == 49);
}

TEST_CASE("normalizer std matches the batch std of 1..100") {
  Normalizer n;
  for (int i = 1; i <= 100; ++i) n.normalize(i);
  // Population std of 1..n is sqrt((n^2 - 1) / 12).
  CHECK(std::abs(n.current_std() - std::sqrt((100.0 * 100.0 - 1.0) / 12.0)) < 1e-6);
}

TEST_CASE("normalizer divides after folding the sample in") {
  Normalizer n;
  n.normalize(1.0);
  const double second = n.normalize(3.0);
  // Population std of {1, 3} is 1.
  CHECK(second == doctest::Approx(3.0));
  CHECK(n.mean_normalized() == doctest::Approx((1.0 + 3.0) / 2.0));
}

TEST_CASE("extrinsic scale arithmetic") {
  Normalizer n(3.0, 0.99);
  n.normalize(0.5);
  CHECK(n.mean_normalized() == 0.5);
  CHECK(n.extrinsic_scale() == 150.0);
  Normalizer empty;
  CHECK(empty.extrinsic_scale() == 0.0);
  CHECK(empty.effective_extrinsic_scale() == 1.0);
  CHECK(empty.eta() == 3.0);
  CHECK_THROWS_AS(Normalizer(3.0, 1.0), std::invalid_argument);
}

TEST_CASE("normalized stream is invariant to reward scale") {
  std::mt19937_64 rng(8);
  std::exponential_distribution<double> dist(1.0);
  Normalizer a, b;
  double ratio = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = dist(rng);
    const double na = a.normalize(x);
    const double nb = b.normalize(37.0 * x);
    if (na > 0.0) ratio = nb / na;
  }
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.01));
  CHECK(b.mean_normalized() == doctest::Approx(a.mean_normalized()).epsilon(0.01));
}

TEST_CASE("ICM-lite rewards") {
  auto phi = one_hot(5);
  ForwardModel model(phi, 4, 1);
  CHECK(model.reward(2, 1, 0) == 1.0);  // zero output layer predicts zeros
  CHECK(model.reward(3, 1, 4) == model.reward(3, 1, 4));
  for (int i = 0; i < 500; ++i) model.train(2, 1, 0);
  CHECK(model.reward(2, 1, 0) < 0.01);
  CHECK(model.reward(2, 1, 0) >= 0.0);
  CHECK_THROWS_AS(model.reward(2, 4, 0), std::out_of_range);
}

TEST_CASE("ICM-lite error on a repeated transition does not grow") {
  auto phi = std::make_shared<const features::Embedding>(features::Embedding::random_projection(6, 16, 2));
  ForwardModel model(phi, 4, 5);
  double prev = model.reward(1, 3, 2);
  for (int i = 0; i < 200; ++i) {
    model.train(1, 3, 2);
    const double now = model.reward(1, 3, 2);
    CHECK(now <= prev + 1e-12);
    prev = now;
  }
}

TEST_CASE("RND-lite rewards") {
  auto phi = one_hot(6);
  DistillationPair same(phi, 4, 16, 64, 1e-3, true);
  for (int s = 0; s < 6; ++s) CHECK(same.reward(s) == 0.0);

  DistillationPair pair(phi, 4);
  const auto frozen = pair.target_parameters();
  const Eigen::VectorXd before = pair.target_output(3);
  for (int i = 0; i < 300; ++i)
    for (int s = 0; s < 5; ++s) pair.train(s);
  CHECK(pair.target_parameters() == frozen);
  CHECK(pair.target_output(3) == before);
  double trained = 0.0;
  for (int s = 0; s < 5; ++s) trained += pair.reward(s) / 5.0;
  CHECK(pair.reward(5) > trained);
}

TEST_CASE("dense map gradient matches finite differences") {
  DenseMap net(3, 5, 2, {1.0, 0.5, 9});
  const Eigen::Vector3d x(0.3, -0.7, 1.1);
  const Eigen::Vector2d t(0.2, -0.4);
  const auto loss = [&](const DenseMap& m) { return (m.forward(x) - t).squaredNorm(); };
  // One SGD step with a tiny rate moves the loss by -rate * ||grad||^2.
  DenseMap stepped = net;
  const double rate = 1e-7;
  const double l0 = stepped.sgd_step(x, t, rate);
  CHECK(l0 == doctest::Approx(loss(net)));
  const auto p0 = net.parameters();
  const auto p1 = stepped.parameters();
  double grad_sq = 0.0;
  for (std::size_t i = 0; i < p0.size(); ++i) grad_sq += std::pow((p0[i] - p1[i]) / rate, 2);
  CHECK((l0 - loss(stepped)) / rate == doctest::Approx(grad_sq).epsilon(1e-3));
}

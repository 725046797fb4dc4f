#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sfc/features/embedding.hpp"

using sfc::features::Embedding;

TEST_CASE("one-hot embeds basis vectors") {
  const Embedding e = Embedding::one_hot(4);
  Eigen::VectorXd expected(4);
  expected << 0, 0, 1, 0;
  CHECK(e.embed(2) == expected);
  CHECK(e.dim() == 4);
  const Eigen::MatrixXd rows = e.rows();
  CHECK((rows * rows.transpose() - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("random projection is deterministic per seed") {
  const Embedding a = Embedding::random_projection(10, 64, 7);
  const Embedding b = Embedding::random_projection(10, 64, 7);
  CHECK(a.embed(3) == a.embed(3));
  CHECK(a.embed(3) == b.embed(3));
  CHECK(a.embed(3) != Embedding::random_projection(10, 64, 8).embed(3));
  CHECK(a.rows().row(3).transpose() == a.embed(3));
}

TEST_CASE("random projection columns have unit expected squared norm") {
  double sum = 0.0;
  int n = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Embedding e = Embedding::random_projection(2, 64, seed);
    sum += e.embed(0).squaredNorm() + e.embed(1).squaredNorm();
    n += 2;
  }
  // Each squared norm is chi^2_64 / 64 with std sqrt(2/64); the mean of 800 has std 0.006.
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("out-of-range state ids are rejected") {
  const Embedding e = Embedding::one_hot(3);
  CHECK_THROWS_AS(e.embed(3), std::out_of_range);
  CHECK_THROWS_AS(e.embed(-1), std::out_of_range);
  CHECK_THROWS_AS(Embedding::random_projection(3, 0, 1), std::invalid_argument);
}

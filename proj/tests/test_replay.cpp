#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>

#include "sfc/replay/buffer.hpp"

using namespace sfc::replay;

namespace {

Transition tagged(int id) {
  Transition t;
  t.s_start = id;
  t.episode_id = id;
  t.discounted_reward_sum = 0.5 * id;
  return t;
}

int count_tier(const std::vector<Sampled>& batch, Tier tier) {
  int n = 0;
  for (const auto& s : batch) n += s.tier == tier ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("ring evicts oldest first") {
  Ring ring(3);
  for (int i = 0; i < 5; ++i) ring.push(tagged(i));
  CHECK(ring.size() == 3);
  const auto items = ring.snapshot();
  CHECK(items[0].s_start == 2);
  CHECK(items[2].s_start == 4);
  CHECK_THROWS(Ring(0));
}

TEST_CASE("first push never gates and equal errors never gate") {
  TwoTierBuffer buf;
  CHECK_FALSE(buf.push(tagged(0), 1e9));
  for (int i = 1; i < 200; ++i) buf.push(tagged(i), 1e9);
  CHECK(buf.high_size() == 0);
  CHECK(buf.main_size() == 200);
}

TEST_CASE("an outlier after a constant stream lands in the high tier") {
  TwoTierBuffer buf;
  for (int i = 0; i < 1000; ++i) buf.push(tagged(i), 1.0);
  CHECK(buf.push(tagged(1000), 100.0));
  CHECK(buf.high_size() == 1);
  CHECK(buf.high_contents().front() == tagged(1000));
  CHECK(buf.main_contents().back() == tagged(1000));
  CHECK(buf.td_stats().count() == 1001);
}

TEST_CASE("gate threshold is mean plus two population std") {
  TwoTierBuffer buf;
  buf.push(tagged(0), 1.0);
  buf.push(tagged(1), 3.0);
  // mean 2, std 1: threshold 4, strict.
  CHECK_FALSE(buf.would_gate(4.0));
  CHECK(buf.would_gate(4.0 + 1e-12));
}

TEST_CASE("gate is monotone in the TD error") {
  TwoTierBuffer buf;
  std::mt19937_64 rng(2);
  std::exponential_distribution<double> e(1.0);
  for (int i = 0; i < 300; ++i) buf.push(tagged(i), e(rng));
  bool seen_gate = false;
  for (double td = 0.0; td < 20.0; td += 0.01) {
    const bool g = buf.would_gate(td);
    if (seen_gate) CHECK(g);
    seen_gate = seen_gate || g;
  }
  CHECK(seen_gate);
}

TEST_CASE("every high-tier element is also in main") {
  TwoTierBuffer buf({100, 10, 128, 32});
  std::mt19937_64 rng(3);
  std::exponential_distribution<double> e(1.0);
  for (int i = 0; i < 60; ++i) buf.push(tagged(i), e(rng) * (i % 7 == 0 ? 10 : 1));
  const auto main = buf.main_contents();
  for (const auto& h : buf.high_contents()) CHECK(std::find(main.begin(), main.end(), h) != main.end());
}

TEST_CASE("batch composition") {
  TwoTierBuffer buf({200, 50, 128, 32});
  std::mt19937_64 rng(5);
  CHECK_THROWS(buf.sample(rng));
  for (int i = 0; i < 100; ++i) buf.push(tagged(i), 1.0);
  auto batch = buf.sample(rng);
  CHECK(batch.size() == 128);
  CHECK(count_tier(batch, Tier::Main) == 128);

  for (int i = 0; i < 400; ++i) buf.push(tagged(1000 + i), i % 10 == 0 ? 1e3 * (i + 1) : 1.0);
  REQUIRE(buf.high_size() > 0);
  for (int r = 0; r < 50; ++r) {
    batch = buf.sample(rng);
    CHECK(count_tier(batch, Tier::Main) == 96);
    CHECK(count_tier(batch, Tier::HighTd) == 32);
  }
}

TEST_CASE("sampling is uniform within a tier") {
  TwoTierBuffer buf({1000, 10, 128, 32});
  for (int i = 0; i < 1000; ++i) buf.push(tagged(i), 1.0);
  std::mt19937_64 rng(7);
  std::vector<int> counts(1000, 0);
  long drawn = 0;
  while (drawn < 100000) {
    for (const auto& s : buf.sample(100, 0, rng)) ++counts[static_cast<std::size_t>(s.transition.s_start)];
    drawn += 100;
  }
  const double expected = static_cast<double>(drawn) / 1000.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 999 degrees of freedom: mean 999, std sqrt(1998).
  CHECK(std::abs(chi2 - 999.0) < 3.0 * std::sqrt(1998.0));
}

TEST_CASE("seeded sampling repeats") {
  TwoTierBuffer buf;
  for (int i = 0; i < 500; ++i) buf.push(tagged(i), (i * 37) % 11);
  std::mt19937_64 a(9), b(9);
  const auto x = buf.sample(a), y = buf.sample(b);
  REQUIRE(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i].transition == y[i].transition);
    CHECK(x[i].tier == y[i].tier);
  }
}

TEST_CASE("capacities hold under concurrent pushes") {
  TwoTierBuffer buf({500, 50, 128, 32});
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&buf, w] {
      for (int i = 0; i < 2000; ++i) buf.push(tagged(w * 10000 + i), (i % 97 == 0) ? 50.0 : 1.0);
    });
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i)
    if (buf.main_size() > 0) CHECK(buf.sample(rng).size() == 128);
  for (auto& t : workers) t.join();
  CHECK(buf.main_size() == 500);
  CHECK(buf.high_size() <= 50);
  CHECK(buf.td_stats().count() == 8000);
}

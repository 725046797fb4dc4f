#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "sfc/env/grid.hpp"
#include "sfc/env/oracles.hpp"
#include "sfc/sf/successor.hpp"

namespace sfc::testing {

struct StatePair {
  int s;
  int s_next;
};

// Every (cell, action) pair of the uniform policy, terminals absorbing. Each
// pair appears once, so a full pass weights successors exactly like P.
inline std::vector<StatePair> uniform_support(const env::GridEnv& env) {
  std::vector<StatePair> out;
  for (const env::Cell& c : env.open_cells()) {
    const int s = env.cell_index(c);
    for (int a = 0; a < env::kActionCount; ++a) {
      env::Cell n = env::move(c, static_cast<env::Action>(a));
      if (env.spec().terminal_rewards.contains(c) || !env.spec().is_open(n)) n = c;
      out.push_back({s, env.cell_index(n)});
    }
  }
  return out;
}

// Shuffled passes over `pairs` with alpha annealed linearly from a0 to a1.
inline void train_shuffled(sf::SfTable& table, const std::vector<StatePair>& pairs, long updates, double a0,
                           double a1, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  long t = 0;
  while (t < updates) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k : order) {
      if (t >= updates) break;
      const double f = updates > 1 ? static_cast<double>(t) / static_cast<double>(updates - 1) : 1.0;
      table.td_update(pairs[k].s, pairs[k].s_next, a0 + (a1 - a0) * f);
      ++t;
    }
  }
}

inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson(average_ranks(a), average_ranks(b));
}

}  // namespace sfc::testing

#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <random>
#include <vector>

#include "sfc/intrinsic/running_stats.hpp"

namespace sfc::replay {

// K-step experience tuple plus the first one-step pair of the window, which
// is what the successor features learn from.
struct Transition {
  int s_start = 0;
  int a_start = 0;
  double discounted_reward_sum = 0.0;  // extrinsic, sum_k gamma^(k-1) r
  int steps = 0;                       // K, or fewer for an episode tail
  int s_end = 0;
  bool done = false;
  int pair_s = 0;
  int pair_s_next = 0;
  std::int64_t episode_id = 0;
  int step_index = 0;

  bool operator==(const Transition&) const = default;
};

enum class Tier { Main, HighTd };

struct Sampled {
  Transition transition;
  Tier tier = Tier::Main;
};

// Fixed-capacity ring, oldest evicted first.
class Ring {
 public:
  explicit Ring(std::size_t capacity);

  void push(const Transition& t);
  const Transition& at(std::size_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return items_.empty(); }
  // Logical order, oldest first.
  std::vector<Transition> snapshot() const;

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> items_;
};

struct BufferConfig {
  std::size_t main_capacity = 40000;
  std::size_t high_capacity = 10000;
  std::size_t batch = 128;
  std::size_t high_share = 32;
};

// Main ring receives everything; the high-TD ring receives transitions whose
// TD error exceeds the running mean + 2 std of all previously pushed errors.
// Safe for many concurrent pushers and one sampler.
class TwoTierBuffer {
 public:
  explicit TwoTierBuffer(BufferConfig config = {});

  // Returns true when the transition also entered the high-TD tier.
  bool push(const Transition& t, double td_error);
  bool would_gate(double td_error) const;

  // Uses config().batch and config().high_share.
  std::vector<Sampled> sample(std::mt19937_64& rng) const;
  std::vector<Sampled> sample(std::size_t batch, std::size_t high_share, std::mt19937_64& rng) const;

  std::size_t main_size() const;
  std::size_t high_size() const;
  intrinsic::RunningStats td_stats() const;
  const BufferConfig& config() const { return config_; }
  std::vector<Transition> main_contents() const;
  std::vector<Transition> high_contents() const;

 private:
  bool gate_locked(double td_error) const;

  BufferConfig config_;
  mutable std::mutex mutex_;
  Ring main_;
  Ring high_;
  intrinsic::RunningStats td_stats_;
};

}  // namespace sfc::replay

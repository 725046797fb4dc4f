#include "sfc/replay/buffer.hpp"

#include <cmath>
#include <stdexcept>

namespace sfc::replay {

Ring::Ring(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("ring capacity must be positive");
  items_.reserve(capacity);
}

void Ring::push(const Transition& t) {
  if (items_.size() < capacity_) {
    items_.push_back(t);
  } else {
    items_[next_] = t;
  }
  next_ = (next_ + 1) % capacity_;
}

std::vector<Transition> Ring::snapshot() const {
  if (items_.size() < capacity_) return items_;
  std::vector<Transition> out;
  out.reserve(capacity_);
  for (std::size_t i = 0; i < capacity_; ++i) out.push_back(items_[(next_ + i) % capacity_]);
  return out;
}

TwoTierBuffer::TwoTierBuffer(BufferConfig config)
    : config_(config), main_(config.main_capacity), high_(config.high_capacity) {
  if (config.high_share > config.batch) throw std::invalid_argument("high_share exceeds batch size");
}

bool TwoTierBuffer::gate_locked(double td_error) const {
  // No spread estimate exists before the first error.
  if (td_stats_.count() == 0) return false;
  return td_error > td_stats_.mean() + 2.0 * td_stats_.stddev();
}

bool TwoTierBuffer::would_gate(double td_error) const {
  std::lock_guard lock(mutex_);
  return gate_locked(td_error);
}

bool TwoTierBuffer::push(const Transition& t, double td_error) {
  if (!std::isfinite(td_error) || td_error < 0.0) throw std::invalid_argument("td_error must be finite and >= 0");
  std::lock_guard lock(mutex_);
  const bool high = gate_locked(td_error);
  td_stats_.push(td_error);
  main_.push(t);
  if (high) high_.push(t);
  return high;
}

std::vector<Sampled> TwoTierBuffer::sample(std::mt19937_64& rng) const {
  return sample(config_.batch, config_.high_share, rng);
}

std::vector<Sampled> TwoTierBuffer::sample(std::size_t batch, std::size_t high_share, std::mt19937_64& rng) const {
  if (high_share > batch) throw std::invalid_argument("high_share exceeds batch size");
  std::lock_guard lock(mutex_);
  if (main_.empty()) throw std::logic_error("sample from an empty replay buffer");
  const std::size_t from_high = high_.empty() ? 0 : high_share;
  std::vector<Sampled> out;
  out.reserve(batch);
  std::uniform_int_distribution<std::size_t> pick_main(0, main_.size() - 1);
  for (std::size_t i = 0; i < batch - from_high; ++i) out.push_back({main_.at(pick_main(rng)), Tier::Main});
  if (from_high > 0) {
    std::uniform_int_distribution<std::size_t> pick_high(0, high_.size() - 1);
    for (std::size_t i = 0; i < from_high; ++i) out.push_back({high_.at(pick_high(rng)), Tier::HighTd});
  }
  return out;
}

std::size_t TwoTierBuffer::main_size() const {
  std::lock_guard lock(mutex_);
  return main_.size();
}

std::size_t TwoTierBuffer::high_size() const {
  std::lock_guard lock(mutex_);
  return high_.size();
}

intrinsic::RunningStats TwoTierBuffer::td_stats() const {
  std::lock_guard lock(mutex_);
  return td_stats_;
}

std::vector<Transition> TwoTierBuffer::main_contents() const {
  std::lock_guard lock(mutex_);
  return main_.snapshot();
}

std::vector<Transition> TwoTierBuffer::high_contents() const {
  std::lock_guard lock(mutex_);
  return high_.snapshot();
}

}  // namespace sfc::replay

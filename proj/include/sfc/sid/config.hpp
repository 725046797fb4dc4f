#pragma once

#include <cstdint>
#include <string>

#include "sfc/features/embedding.hpp"
#include "sfc/qlearn/value.hpp"
#include "sfc/replay/buffer.hpp"
#include "sfc/sf/successor.hpp"

namespace sfc::sid {

enum class AgentKind { M, BonusSum, Sid };
enum class IntrinsicKind { None, Sfc, Icm, Rnd };
enum class SchedulerKind { Random, Switching, MacroQ, ThresholdQ };
enum class ThresholdVariant { RunningMean, HeuristicMedian };

std::string to_string(AgentKind k);
std::string to_string(IntrinsicKind k);
std::string to_string(SchedulerKind k);
std::string to_string(ThresholdVariant v);
AgentKind agent_kind_from_string(const std::string& s);
IntrinsicKind intrinsic_kind_from_string(const std::string& s);
SchedulerKind scheduler_kind_from_string(const std::string& s);
ThresholdVariant threshold_variant_from_string(const std::string& s);

struct EnvConfig {
  std::string name = "flytrap";
  std::string map_file;  // overrides name when set
  int max_steps = 0;     // 0 keeps the layout's own budget
};

struct EmbeddingConfig {
  features::EmbeddingKind kind = features::EmbeddingKind::OneHot;
  int dim = 64;  // RandomProjection only; OneHot uses |S|
  std::uint64_t seed = 7;
};

struct SfConfig {
  double gamma = 0.98;
  double alpha = 0.1;
  sf::Convention convention = sf::Convention::NextStateOnly;
};

struct IntrinsicConfig {
  IntrinsicKind kind = IntrinsicKind::Sfc;
  double eta = 3.0;
  double gamma_i = 0.99;
  double scale = 1.0;  // multiplies raw intrinsic rewards before normalization
  int hidden = 64;
  double rate = 1e-3;
  int rnd_out = 16;
};

struct QConfig {
  qlearn::Mode mode = qlearn::Mode::Tabular;
  double gamma_e = 0.99;
  double gamma_i = 0.99;
  double alpha = 0.1;
  int sync_interval = 500;
  double dense_rate = 1e-4;
  int dense_hidden = 128;
};

struct SchedulerConfig {
  SchedulerKind kind = SchedulerKind::Random;
  int slots = 8;
  ThresholdVariant threshold_variant = ThresholdVariant::RunningMean;
  double threshold = 0.007;
  double macro_alpha = 0.1;
  double macro_epsilon = 0.1;
};

struct AgentConfig {
  AgentKind kind = AgentKind::Sid;
  int actors = 8;
  int k = 5;
  double epsilon_base = 0.4;
  double epsilon_alpha = 7.0;
  int snapshot_interval = 100;
};

struct RunConfig {
  EnvConfig env;
  EmbeddingConfig embedding;
  SfConfig sf;
  IntrinsicConfig intrinsic;
  QConfig q;
  replay::BufferConfig replay;
  SchedulerConfig scheduler;
  AgentConfig agent;
  std::int64_t budget = 2'000'000;  // env steps
  std::uint64_t seed = 1;
  bool deterministic = true;
  int learner_steps_per_episode = 16;
  std::int64_t learn_start = 128;  // main-buffer size before learning starts
  int log_interval = 1000;         // learner steps between diagnostics rows

  // Throws std::invalid_argument with every problem found.
  void validate() const;
};

}  // namespace sfc::sid

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sfc/env/grid.hpp"
#include "sfc/features/embedding.hpp"
#include "sfc/qlearn/checkpoint.hpp"
#include "sfc/sid/config.hpp"
#include "sfc/sid/learner.hpp"

namespace sfc::sid {

struct EpisodeRecord {
  std::int64_t episode = 0;
  std::int64_t env_steps = 0;  // cumulative, at episode end
  double extrinsic_return = 0.0;
  int task_e_steps = 0;
  int task_i_steps = 0;
  bool success = false;
  int actor = 0;
  std::string task_sequence;
};

struct RunResult {
  std::vector<EpisodeRecord> episodes;
  std::vector<LearnerDiagnostics> learner_log;
  qlearn::Checkpoint checkpoint;
  std::int64_t env_steps = 0;
  std::int64_t learner_steps = 0;
};

env::GridSpec build_spec(const EnvConfig& config);
std::shared_ptr<const features::Embedding> build_embedding(const EmbeddingConfig& config, int num_states);

// Trains one agent until `config.budget` env steps have been played. In
// deterministic mode a single thread runs actors round-robin, one episode
// each, followed by learner_steps_per_episode learner steps.
RunResult run_training(const RunConfig& config);

qlearn::Checkpoint make_checkpoint(const RunConfig& config, const Learner& learner);

// Fraction of successful episodes / mean return over the last `window` episodes.
double final_success_rate(const std::vector<EpisodeRecord>& episodes, std::size_t window = 50);
double final_mean_return(const std::vector<EpisodeRecord>& episodes, std::size_t window = 50);

void write_metrics_csv(const std::string& path, const std::vector<EpisodeRecord>& episodes);
std::vector<EpisodeRecord> read_metrics_csv(const std::string& path);
void write_task_log(const std::string& path, const std::vector<EpisodeRecord>& episodes);
void write_learner_log(const std::string& path, const std::vector<LearnerDiagnostics>& log);

struct EvalResult {
  int episodes = 0;
  double mean_return = 0.0;
  double success_rate = 0.0;
  double mean_steps = 0.0;
};

// Plays the extrinsic head of a checkpoint epsilon-greedily on `env_name`.
EvalResult evaluate_checkpoint(const qlearn::Checkpoint& ckpt, const std::string& env_name, int episodes,
                               double epsilon = 0.0, std::uint64_t seed = 0);

}  // namespace sfc::sid

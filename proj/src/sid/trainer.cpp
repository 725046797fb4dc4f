#include "sfc/sid/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sfc/env/layouts.hpp"

namespace sfc::sid {

namespace {

// splitmix64 finalizer; gives every component its own independent stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string hexd(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<Actor> make_actors(const RunConfig& config, const env::GridSpec& spec,
                               const std::shared_ptr<const features::Embedding>& phi) {
  std::vector<Actor> actors;
  const int n = config.agent.actors;
  for (int i = 1; i <= n; ++i) {
    std::optional<Scheduler> scheduler;
    if (config.agent.kind == AgentKind::Sid)
      scheduler.emplace(config.scheduler, phi->num_states(), config.q.gamma_e,
                        derive_seed(config.seed, 200 + static_cast<std::uint64_t>(i)));
    actors.emplace_back(i, env::GridEnv(spec, derive_seed(config.seed, 100 + static_cast<std::uint64_t>(i))),
                        qlearn::epsilon_for_actor(i, n, config.agent.epsilon_base, config.agent.epsilon_alpha),
                        std::move(scheduler), ActorOptions{config.agent.kind, config.agent.k, config.q.gamma_e},
                        derive_seed(config.seed, 300 + static_cast<std::uint64_t>(i)));
  }
  return actors;
}

EpisodeRecord to_record(const EpisodeStats& stats, std::int64_t episode, std::int64_t env_steps, int actor) {
  return {episode,
          env_steps,
          stats.extrinsic_return,
          stats.task_steps[0],
          stats.task_steps[1],
          stats.success,
          actor,
          stats.task_sequence};
}

void run_deterministic(const RunConfig& config, Learner& learner, std::vector<Actor>& actors,
                       replay::TwoTierBuffer& buffer, RunResult& result) {
  Snapshot snapshot = learner.snapshot();
  while (result.env_steps < config.budget) {
    for (Actor& actor : actors) {
      if (result.env_steps >= config.budget) break;
      const EpisodeStats stats = actor.run_episode(snapshot, buffer);
      result.env_steps += stats.steps;
      result.episodes.push_back(
          to_record(stats, static_cast<std::int64_t>(result.episodes.size()), result.env_steps, actor.index()));
      if (static_cast<std::int64_t>(buffer.main_size()) < config.learn_start) continue;
      for (int j = 0; j < config.learner_steps_per_episode; ++j) {
        const LearnerDiagnostics diag = learner.step(buffer);
        if (diag.step % config.log_interval == 0) result.learner_log.push_back(diag);
        if (diag.step % config.agent.snapshot_interval == 0) snapshot = learner.snapshot();
      }
    }
  }
}

void run_concurrent(const RunConfig& config, Learner& learner, std::vector<Actor>& actors,
                    replay::TwoTierBuffer& buffer, RunResult& result) {
  std::mutex snapshot_mutex;
  auto snapshot = std::make_shared<const Snapshot>(learner.snapshot());
  std::mutex record_mutex;
  std::atomic<std::int64_t> env_steps{0};
  std::atomic<std::int64_t> episodes_done{0};
  std::atomic<int> actors_running{static_cast<int>(actors.size())};

  std::vector<std::thread> workers;
  for (Actor& actor : actors) {
    workers.emplace_back([&, actor_ptr = &actor] {
      while (env_steps.load() < config.budget) {
        std::shared_ptr<const Snapshot> current;
        {
          std::lock_guard lock(snapshot_mutex);
          current = snapshot;
        }
        const EpisodeStats stats = actor_ptr->run_episode(*current, buffer);
        const std::int64_t total = env_steps.fetch_add(stats.steps) + stats.steps;
        {
          std::lock_guard lock(record_mutex);
          result.episodes.push_back(
              to_record(stats, static_cast<std::int64_t>(result.episodes.size()), total, actor_ptr->index()));
        }
        ++episodes_done;
      }
      --actors_running;
    });
  }

  std::thread learner_thread([&] {
    while (actors_running.load() > 0) {
      const std::int64_t allowed = episodes_done.load() * config.learner_steps_per_episode;
      if (static_cast<std::int64_t>(buffer.main_size()) < config.learn_start || learner.step_count() >= allowed) {
        std::this_thread::sleep_for(std::chrono::microseconds(200));
        continue;
      }
      const LearnerDiagnostics diag = learner.step(buffer);
      if (diag.step % config.log_interval == 0) result.learner_log.push_back(diag);
      if (diag.step % config.agent.snapshot_interval == 0) {
        auto next = std::make_shared<const Snapshot>(learner.snapshot());
        std::lock_guard lock(snapshot_mutex);
        snapshot = std::move(next);
      }
    }
  });

  for (auto& w : workers) w.join();
  learner_thread.join();
  result.env_steps = env_steps.load();
}

}  // namespace

env::GridSpec build_spec(const EnvConfig& config) {
  env::GridSpec spec = config.map_file.empty() ? env::make_spec(config.name)
                                               : env::load_map_file(config.map_file);
  if (config.max_steps > 0) spec.max_steps = config.max_steps;
  return spec;
}

std::shared_ptr<const features::Embedding> build_embedding(const EmbeddingConfig& config, int num_states) {
  if (config.kind == features::EmbeddingKind::OneHot)
    return std::make_shared<const features::Embedding>(features::Embedding::one_hot(num_states));
  return std::make_shared<const features::Embedding>(
      features::Embedding::random_projection(num_states, config.dim, config.seed));
}

qlearn::Checkpoint make_checkpoint(const RunConfig& config, const Learner& learner) {
  qlearn::Checkpoint ckpt;
  ckpt.meta["env.name"] = config.env.map_file.empty() ? config.env.name : config.env.map_file;
  ckpt.meta["env.max_steps"] = std::to_string(build_spec(config.env).max_steps);
  ckpt.meta["embedding.kind"] = features::to_string(config.embedding.kind);
  ckpt.meta["embedding.dim"] = std::to_string(config.embedding.dim);
  ckpt.meta["embedding.seed"] = std::to_string(config.embedding.seed);
  ckpt.meta["agent.kind"] = to_string(config.agent.kind);
  ckpt.meta["sf.gamma"] = hexd(learner.sf().gamma());
  ckpt.meta["sf.alpha"] = hexd(learner.sf().alpha());
  ckpt.meta["sf.convention"] = sf::to_string(learner.sf().convention());
  ckpt.meta["learner.steps"] = std::to_string(learner.step_count());
  ckpt.meta["extrinsic_scale"] = hexd(learner.snapshot().extrinsic_scale);
  qlearn::export_value(ckpt, learner.online());
  ckpt.arrays["sf.psi"] = learner.sf().table();
  return ckpt;
}

RunResult run_training(const RunConfig& config) {
  config.validate();
  const env::GridSpec spec = build_spec(config.env);
  const env::GridEnv probe(spec);
  auto phi = build_embedding(config.embedding, probe.num_states());

  Learner learner(config, phi, derive_seed(config.seed, 0));
  std::vector<Actor> actors = make_actors(config, spec, phi);
  replay::TwoTierBuffer buffer(config.replay);

  RunResult result;
  if (config.deterministic) {
    run_deterministic(config, learner, actors, buffer, result);
  } else {
    run_concurrent(config, learner, actors, buffer, result);
  }
  result.learner_steps = learner.step_count();
  result.checkpoint = make_checkpoint(config, learner);
  return result;
}

double final_success_rate(const std::vector<EpisodeRecord>& episodes, std::size_t window) {
  if (episodes.empty()) return 0.0;
  const std::size_t n = std::min(window, episodes.size());
  const auto wins = std::count_if(episodes.end() - static_cast<std::ptrdiff_t>(n), episodes.end(),
                                  [](const EpisodeRecord& e) { return e.success; });
  return static_cast<double>(wins) / static_cast<double>(n);
}

double final_mean_return(const std::vector<EpisodeRecord>& episodes, std::size_t window) {
  if (episodes.empty()) return 0.0;
  const std::size_t n = std::min(window, episodes.size());
  double sum = 0.0;
  for (auto it = episodes.end() - static_cast<std::ptrdiff_t>(n); it != episodes.end(); ++it)
    sum += it->extrinsic_return;
  return sum / static_cast<double>(n);
}

void write_metrics_csv(const std::string& path, const std::vector<EpisodeRecord>& episodes) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "episode,env_steps,return,task_E_steps,task_I_steps,success\n";
  for (const EpisodeRecord& e : episodes)
    out << e.episode << ',' << e.env_steps << ',' << fmt(e.extrinsic_return) << ',' << e.task_e_steps << ','
        << e.task_i_steps << ',' << (e.success ? 1 : 0) << '\n';
}

std::vector<EpisodeRecord> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("episode,env_steps,return", 0) != 0) throw std::runtime_error(path + ": not a metrics file");
  std::vector<EpisodeRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    EpisodeRecord e;
    int success = 0;
    if (!(row >> e.episode >> e.env_steps >> e.extrinsic_return >> e.task_e_steps >> e.task_i_steps >> success))
      throw std::runtime_error(path + ": malformed row");
    e.success = success != 0;
    out.push_back(e);
  }
  return out;
}

void write_task_log(const std::string& path, const std::vector<EpisodeRecord>& episodes) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "episode,actor,tasks\n";
  for (const EpisodeRecord& e : episodes) out << e.episode << ',' << e.actor << ',' << e.task_sequence << '\n';
}

void write_learner_log(const std::string& path, const std::vector<LearnerDiagnostics>& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "step,raw_intrinsic_mean,normalized_intrinsic_mean,extrinsic_scale,extrinsic_td,intrinsic_td\n";
  for (const LearnerDiagnostics& d : log)
    out << d.step << ',' << fmt(d.raw_intrinsic_mean) << ',' << fmt(d.normalized_intrinsic_mean) << ','
        << fmt(d.extrinsic_scale) << ',' << fmt(d.extrinsic_td_mean) << ',' << fmt(d.intrinsic_td_mean) << '\n';
}

EvalResult evaluate_checkpoint(const qlearn::Checkpoint& ckpt, const std::string& env_name, int episodes,
                               double epsilon, std::uint64_t seed) {
  if (episodes <= 0) throw std::invalid_argument("episodes must be positive");
  EnvConfig env_config;
  if (std::filesystem::exists(env_name)) {
    env_config.map_file = env_name;
  } else {
    env_config.name = env_name;
  }
  if (auto it = ckpt.meta.find("env.max_steps"); it != ckpt.meta.end()) env_config.max_steps = std::stoi(it->second);
  env::GridEnv env(build_spec(env_config), seed);

  EmbeddingConfig emb;
  emb.kind = features::embedding_kind_from_string(ckpt.meta.at("embedding.kind"));
  emb.dim = std::stoi(ckpt.meta.at("embedding.dim"));
  emb.seed = std::stoull(ckpt.meta.at("embedding.seed"));
  const auto q = qlearn::import_value(ckpt, build_embedding(emb, env.num_states()));
  if (q.num_states() != env.num_states()) throw std::invalid_argument("checkpoint does not match environment " + env_name);

  std::mt19937_64 rng(seed);
  EvalResult r;
  r.episodes = episodes;
  for (int e = 0; e < episodes; ++e) {
    env::Observation obs = env.reset();
    double ret = 0.0;
    bool success = false;
    while (!env.done()) {
      int a = q.greedy_action(TaskId::Extrinsic, obs.state_id);
      if (std::bernoulli_distribution(epsilon)(rng)) a = std::uniform_int_distribution<int>(0, 3)(rng);
      const env::StepResult s = env.step(static_cast<env::Action>(a));
      ret += s.reward;
      success = success || s.reached_terminal;
      obs = s.observation;
    }
    r.mean_return += ret / episodes;
    r.success_rate += (success ? 1.0 : 0.0) / episodes;
    r.mean_steps += static_cast<double>(env.state().steps_elapsed) / episodes;
  }
  return r;
}

}  // namespace sfc::sid

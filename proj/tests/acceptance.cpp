// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fixtures.hpp"
#include "sfc/env/layouts.hpp"
#include "sfc/features/embedding.hpp"
#include "sfc/intrinsic/normalizer.hpp"
#include "sfc/qlearn/value.hpp"
#include "sfc/replay/buffer.hpp"
#include "sfc/report/config.hpp"
#include "sfc/sf/heatmap.hpp"
#include "sfc/sid/learner.hpp"
#include "sfc/sid/scheduler.hpp"
#include "sfc/sid/trainer.hpp"

#ifndef SFC_CONFIG_DIR
#define SFC_CONFIG_DIR "configs"
#endif

using namespace sfc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // <= 0: unbounded
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::shared_ptr<const features::Embedding> one_hot(int n) {
  return std::make_shared<const features::Embedding>(features::Embedding::one_hot(n));
}

double median3(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

std::string config_dir;

sid::RunConfig load(const std::string& file, std::uint64_t seed) {
  sid::RunConfig c = report::load_config(config_dir + "/" + file);
  c.seed = seed;
  return c;
}

// --- 1
Outcome td_equivalence() {
  env::GridEnv chain5(env::chain(5));
  const Eigen::MatrixXd p = env::transition_matrix(chain5, env::uniform_policy(chain5));
  const auto pairs = testing::uniform_support(chain5);
  Outcome out{true, ""};
  for (sf::Convention conv : {sf::Convention::IncludeCurrent, sf::Convention::NextStateOnly}) {
    const Eigen::MatrixXd oracle = sf::analytic_sr(p, Eigen::MatrixXd::Identity(5, 5), 0.9, conv).psi;
    sf::SfTable t(one_hot(5), 0.9, 0.5, conv);
    testing::train_shuffled(t, pairs, 100000, 0.5, 0.01, 1);
    const double err = (Eigen::MatrixXd(t.table()) - oracle).cwiseAbs().maxCoeff();
    out.pass = out.pass && err <= 0.05;
    out.detail += sf::to_string(conv) + " Linf=" + fmt("%.4f", err) + " ";
  }
  return out;
}

// --- 2
Outcome metric_identity() {
  double worst = 0.0;
  for (const env::GridSpec& spec : {env::chain(5), env::three_rooms()}) {
    env::GridEnv e(spec);
    const Eigen::MatrixXd p = env::transition_matrix(e, env::uniform_policy(e));
    const int n = static_cast<int>(p.rows());
    for (sf::Convention conv : {sf::Convention::IncludeCurrent, sf::Convention::NextStateOnly}) {
      const auto sr = sf::analytic_sr(p, Eigen::MatrixXd::Identity(n, n), 0.9, conv);
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
          // (e_s - e_t)^T W (e_s - e_t) read straight off the metric entries.
          const double quad = sr.metric(s, s) - sr.metric(s, t) - sr.metric(t, s) + sr.metric(t, t);
          const double sd = sf::successor_distance(sr.psi, s, t);
          worst = std::max(worst, std::abs(sd * sd - quad));
        }
    }
  }
  return {worst <= 1e-9, "max |d^2 - quad form| = " + fmt("%.3g", worst)};
}

// --- 3
Outcome sd_vs_bfs() {
  env::GridEnv rooms(env::three_rooms());
  const Eigen::MatrixXd p = env::transition_matrix(rooms, env::uniform_policy(rooms));
  const int n = static_cast<int>(p.rows());
  const Eigen::MatrixXd psi =
      sf::analytic_sr(p, Eigen::MatrixXd::Identity(n, n), 0.98, sf::Convention::NextStateOnly).psi;
  const sf::HeatField field = sf::sd_field(rooms, psi, env::kThreeRoomsAnchor);
  const std::vector<int> labels = env::room_labels(rooms);
  const int anchor_room = labels[static_cast<std::size_t>(rooms.cell_index(env::kThreeRoomsAnchor))];

  std::vector<double> sd, bfs;
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_distance;  // same, other
  for (const auto& h : field) {
    const int d = *env::shortest_path_distance(rooms, h.cell, env::kThreeRoomsAnchor);
    sd.push_back(h.value);
    bfs.push_back(d);
    const int label = labels[static_cast<std::size_t>(rooms.cell_index(h.cell))];
    if (label < 0) continue;  // doorway cells belong to no room
    (label == anchor_room ? by_distance[d].first : by_distance[d].second).push_back(h.value);
  }
  const double rho = testing::spearman(sd, bfs);
  auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
  int matched = 0, exceeded = 0;
  for (const auto& [d, groups] : by_distance) {
    if (groups.first.empty() || groups.second.empty()) continue;
    ++matched;
    exceeded += mean(groups.second) > mean(groups.first) ? 1 : 0;
  }
  const bool pass = rho >= 0.8 && matched > 0 && exceeded == matched;
  return {pass, "spearman=" + fmt("%.4f", rho) + " other>same at " + std::to_string(exceeded) + "/" +
                    std::to_string(matched) + " matched distances"};
}

// --- 4
Outcome bottleneck_sfc() {
  env::GridEnv rooms(env::three_rooms());
  const int n = rooms.num_cells();
  sf::SfTable table(one_hot(n), 0.98, 0.5, sf::Convention::NextStateOnly);
  const auto pairs = testing::uniform_support(rooms);
  testing::train_shuffled(table, pairs, 1000L * static_cast<long>(pairs.size()), 0.5, 0.01, 1);

  const Eigen::MatrixXd p = env::transition_matrix(rooms, env::uniform_policy(rooms));
  const Eigen::MatrixXd oracle =
      sf::analytic_sr(p, Eigen::MatrixXd::Identity(n, n), 0.98, sf::Convention::NextStateOnly).psi;
  const double err = (Eigen::MatrixXd(table.table()) - oracle).cwiseAbs().maxCoeff();

  const std::vector<int> labels = env::room_labels(rooms);
  double crossing = 0.0, intra = 0.0;
  int n_crossing = 0, n_intra = 0;
  for (const auto& [s, s_next] : pairs) {
    if (s == s_next) continue;  // bumps carry no SFC
    const int ls = labels[static_cast<std::size_t>(s)], ln = labels[static_cast<std::size_t>(s_next)];
    const double r = table.sfc_reward(s, s_next);
    if (ls < 0 || ln < 0) {
      crossing += r;
      ++n_crossing;
    } else if (ls == ln) {
      intra += r;
      ++n_intra;
    }
  }
  crossing /= n_crossing;
  intra /= n_intra;
  return {crossing >= 2.0 * intra, "crossing=" + fmt("%.4f", crossing) + " intra=" + fmt("%.4f", intra) +
                                       " ratio=" + fmt("%.2f", crossing / intra) + " (" +
                                       std::to_string(n_crossing) + "/" + std::to_string(n_intra) +
                                       " moves, SF Linf to analytic " + fmt("%.3f", err) + ")"};
}

// --- 5 and 6
struct SeedResults {
  std::vector<double> success, ret;
};

SeedResults run_seeds(const std::string& file) {
  SeedResults out;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const sid::RunResult r = sid::run_training(load(file, seed));
    out.success.push_back(sid::final_success_rate(r.episodes));
    out.ret.push_back(sid::final_mean_return(r.episodes));
    std::printf("    %s seed %llu: final success %.2f, final return %.3f, %zu episodes\n", file.c_str(),
                static_cast<unsigned long long>(seed), out.success.back(), out.ret.back(), r.episodes.size());
    std::fflush(stdout);
  }
  return out;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt("%.2f", x);
  return "[" + s + "]";
}

Outcome flytrap() {
  const SeedResults sid_runs = run_seeds("flytrap_sid_sfc.ini");
  const SeedResults m_runs = run_seeds("flytrap_m.ini");
  const int solved = static_cast<int>(std::count(sid_runs.success.begin(), sid_runs.success.end(), 1.0));
  const bool pass = median3(sid_runs.success) == 1.0 && solved >= 2 && median3(m_runs.success) <= 0.1;
  return {pass, "SID success " + list(sid_runs.success) + " M success " + list(m_runs.success)};
}

Outcome distraction() {
  const SeedResults sid_runs = run_seeds("distraction_sid_sfc.ini");
  const SeedResults bonus_runs = run_seeds("distraction_bonus_sfc.ini");
  const int reached =
      static_cast<int>(std::count_if(sid_runs.ret.begin(), sid_runs.ret.end(), [](double r) { return r >= 1.0; }));
  const bool pass = median3(sid_runs.ret) >= median3(bonus_runs.ret) && reached >= 2;
  return {pass, "SID return " + list(sid_runs.ret) + " M+SFC return " + list(bonus_runs.ret)};
}

// --- 7
Outcome normalization() {
  intrinsic::Normalizer n(3.0, 0.99);
  n.normalize(0.5);  // first sample: std reported as 1, normalized value 0.5
  const double scale = n.extrinsic_scale();
  const bool pass = n.mean_normalized() == 0.5 && scale == 150.0 && intrinsic::Normalizer().eta() == 3.0;
  return {pass, "scale=" + fmt("%.17g", scale) + " default eta=" + fmt("%g", intrinsic::Normalizer().eta())};
}

// --- 8
Outcome per_actor_epsilon() {
  const double e1 = qlearn::epsilon_for_actor(1, 8);
  const double reference = std::pow(0.4, 1.0 + (315.0 / 359.0) * 7.0);
  const double e8 = qlearn::epsilon_for_actor(8, 8);
  return {e1 == 0.4 && std::abs(e8 - reference) <= 1e-6,
          "eps1=" + fmt("%.17g", e1) + " eps8=" + fmt("%.9g", e8) + " reference=" + fmt("%.9g", reference)};
}

// --- 9
Outcome replay_suite() {
  std::vector<std::string> failed;
  auto tagged = [](int id) {
    replay::Transition t;
    t.s_start = id;
    t.episode_id = id;
    return t;
  };

  // Composition on a full buffer with the default configuration.
  replay::TwoTierBuffer buf;
  std::mt19937_64 rng(11);
  std::exponential_distribution<double> td(1.0);
  for (int i = 0; i < static_cast<int>(buf.config().main_capacity) + 5000; ++i) buf.push(tagged(i), td(rng));
  if (buf.main_size() != buf.config().main_capacity || buf.high_size() == 0) failed.push_back("fill");
  for (int b = 0; b < 2000; ++b) {
    int main = 0, high = 0;
    for (const auto& s : buf.sample(rng)) (s.tier == replay::Tier::Main ? main : high) += 1;
    if (main != 96 || high != 32) {
      failed.push_back("composition");
      break;
    }
  }

  // Gate: first push never gates; threshold mean + 2 std is strict; monotone.
  replay::TwoTierBuffer gate;
  if (gate.push(tagged(0), 1e9)) failed.push_back("first push gated");
  replay::TwoTierBuffer strict;
  strict.push(tagged(0), 1.0);
  strict.push(tagged(1), 3.0);
  if (strict.would_gate(4.0) || !strict.would_gate(4.0 + 1e-12)) failed.push_back("threshold");
  bool seen = false;
  for (double x = 0.0; x < 20.0; x += 0.01) {
    const bool g = buf.would_gate(x);
    if (seen && !g) failed.push_back("monotone");
    seen = seen || g;
  }
  // High-tier items no older than main's oldest must still be in main.
  const auto main_items = buf.main_contents();
  std::set<std::int64_t> main_ids;
  for (const auto& t : main_items) main_ids.insert(t.episode_id);
  for (const auto& h : buf.high_contents())
    if (h.episode_id >= main_items.front().episode_id && !main_ids.contains(h.episode_id)) {
      failed.push_back("high element missing from main");
      break;
    }

  // Chi-squared uniformity of main-tier draws.
  replay::TwoTierBuffer uni({1000, 10, 128, 32});
  for (int i = 0; i < 1000; ++i) uni.push(tagged(i), 1.0);
  std::vector<int> counts(1000, 0);
  long drawn = 0;
  while (drawn < 200000) {
    for (const auto& s : uni.sample(100, 0, rng)) ++counts[static_cast<std::size_t>(s.transition.s_start)];
    drawn += 100;
  }
  const double expected = static_cast<double>(drawn) / 1000.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  if (std::abs(chi2 - 999.0) > 3.0 * std::sqrt(1998.0)) failed.push_back("chi2");

  std::string detail = "chi2=" + fmt("%.1f", chi2) + " (df 999)";
  for (const auto& f : failed) detail += " FAILED:" + f;
  return {failed.empty(), detail};
}

// --- 10
Outcome scheduler_suite() {
  std::vector<std::string> failed;
  sid::SchedulerConfig random;
  random.kind = sid::SchedulerKind::Random;
  sid::Scheduler r(random, 1, 0.99, 42);
  int intrinsic = 0;
  for (int i = 0; i < 10000; ++i) intrinsic += r.next_task({}) == TaskId::Intrinsic ? 1 : 0;
  const double f = intrinsic / 10000.0;
  if (f < 0.47 || f > 0.53) failed.push_back("random frequency");

  sid::SchedulerConfig switching;
  switching.kind = sid::SchedulerKind::Switching;
  sid::Scheduler sw(switching, 1, 0.99, 1);
  for (int slot = 0; slot < 64; ++slot) {
    sid::SchedulerContext ctx;
    ctx.slot_index = slot;
    if (sw.next_task(ctx) != (slot % 2 == 0 ? TaskId::Extrinsic : TaskId::Intrinsic)) {
      failed.push_back("switching");
      break;
    }
  }

  sid::SchedulerConfig mean;
  mean.kind = sid::SchedulerKind::ThresholdQ;
  mean.threshold_variant = sid::ThresholdVariant::RunningMean;
  sid::Scheduler by_mean(mean, 1, 0.99, 1);
  if (by_mean.next_task({0.5, 0.6, 0, 0}) != TaskId::Intrinsic ||
      by_mean.next_task({0.7, 0.6, 0, 0}) != TaskId::Extrinsic ||
      by_mean.next_task({0.6, 0.6, 0, 0}) != TaskId::Extrinsic)
    failed.push_back("threshold running mean");

  sid::SchedulerConfig median = mean;
  median.threshold_variant = sid::ThresholdVariant::HeuristicMedian;
  sid::Scheduler by_median(median, 1, 0.99, 1);
  if (median.threshold != 0.007 || by_median.next_task({0.01, 100.0, 0, 0}) != TaskId::Extrinsic ||
      by_median.next_task({0.005, -100.0, 0, 0}) != TaskId::Intrinsic ||
      by_median.next_task({0.007, 0.0, 0, 0}) != TaskId::Extrinsic)
    failed.push_back("threshold heuristic median");

  std::string detail = "random intrinsic frequency " + fmt("%.4f", f);
  for (const auto& x : failed) detail += " FAILED:" + x;
  return {failed.empty(), detail};
}

// --- 11
Outcome head_separation() {
  sid::RunConfig sid_config;
  sid_config.env.name = "three_rooms";
  sid_config.agent.kind = sid::AgentKind::Sid;
  sid_config.intrinsic.kind = sid::IntrinsicKind::Sfc;
  sid_config.intrinsic.scale = 0.0;
  sid::RunConfig m_config = sid_config;
  m_config.agent.kind = sid::AgentKind::M;
  m_config.intrinsic.kind = sid::IntrinsicKind::None;

  env::GridEnv rooms(env::three_rooms());
  const int n = rooms.num_cells();
  sid::Learner with_sid(sid_config, one_hot(n), 1), plain(m_config, one_hot(n), 1);

  // Random-walk transitions with a terminal reward at the far right column.
  std::mt19937_64 rng(3);
  const auto cells = rooms.open_cells();
  int steps = 0;
  for (int b = 0; b < 3000; ++b) {
    std::vector<replay::Sampled> batch;
    for (int i = 0; i < 128; ++i) {
      const env::Cell c = cells[rng() % cells.size()];
      const int a = static_cast<int>(rng() % env::kActionCount);
      env::Cell next = env::move(c, static_cast<env::Action>(a));
      if (!rooms.spec().is_open(next)) next = c;
      const bool goal = next.x == rooms.spec().width - 1;
      replay::Transition t;
      t.s_start = rooms.cell_index(c);
      t.a_start = a;
      t.discounted_reward_sum = goal ? 1.0 : 0.0;
      t.steps = 1;
      t.s_end = rooms.cell_index(next);
      t.done = goal;
      t.pair_s = t.s_start;
      t.pair_s_next = t.s_end;
      batch.push_back({t, replay::Tier::Main});
    }
    sid::BatchTrace a, c;
    with_sid.learn_on_batch(batch, &a);
    plain.learn_on_batch(batch, &c);
    ++steps;
    if (a.extrinsic_targets != c.extrinsic_targets ||
        with_sid.online().tabular_impl()->tables[0] != plain.online().tabular_impl()->tables[0])
      return {false, "extrinsic head diverged at learner step " + std::to_string(steps)};
  }
  const bool moved = !plain.online().tabular_impl()->tables[0].isZero(0.0);
  return {moved, "theta_E bit-identical over " + std::to_string(steps) + " learner steps"};
}

// --- 12
Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "sfc_acceptance_determinism";
  std::filesystem::create_directories(dir);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), {});
  };
  int checked = 0;
  for (const std::string file :
       {"flytrap_sid_sfc.ini", "flytrap_m.ini", "distraction_sid_sfc.ini", "distraction_bonus_sfc.ini"}) {
    sid::RunConfig c = load(file, 7);
    c.budget = 100000;
    const auto a = dir / (file + ".a.csv"), b = dir / (file + ".b.csv");
    sid::write_metrics_csv(a.string(), sid::run_training(c).episodes);
    sid::write_metrics_csv(b.string(), sid::run_training(c).episodes);
    const std::string ta = slurp(a), tb = slurp(b);
    if (ta.empty() || ta != tb) return {false, file + " metrics differ between identical runs"};
    ++checked;
  }
  std::filesystem::remove_all(dir);
  return {true, std::to_string(checked) + " configs byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  config_dir = SFC_CONFIG_DIR;
  app.add_option("--only", only, "Run only these criterion numbers")->delimiter(',');
  app.add_option("--config-dir", config_dir, "Directory holding the experiment configs");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "TD successor features match analytic SR (chain5, both conventions)", 5, td_equivalence},
      {2, "metric identity d^2 = (e_s-e_t)^T W (e_s-e_t)", 5, metric_identity},
      {3, "SD tracks shortest path on three_rooms", 10, sd_vs_bfs},
      {4, "doorway SFC at least twice intra-room SFC", 10, bottleneck_sfc},
      {5, "flytrap: SID(M,SFC) solves, M does not", 900, flytrap},
      {6, "distraction: SID(M,SFC) beats M+SFC and reaches return 1", 900, distraction},
      {7, "extrinsic scale arithmetic", 0, normalization},
      {8, "per-actor epsilon", 0, per_actor_epsilon},
      {9, "two-tier replay composition, gate, uniformity", 0, replay_suite},
      {10, "scheduler suite", 0, scheduler_suite},
      {11, "extrinsic head separation", 0, head_separation},
      {12, "deterministic runs are byte-identical", 0, determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += " (over time limit " + fmt("%g", c.time_limit_s) + " s)";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

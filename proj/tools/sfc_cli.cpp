#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfc/qlearn/checkpoint.hpp"
#include "sfc/report/aggregate.hpp"
#include "sfc/report/config.hpp"
#include "sfc/report/run_io.hpp"
#include "sfc/sf/heatmap.hpp"
#include "sfc/sid/trainer.hpp"

namespace {

using namespace sfc;

int run_one(const sid::RunConfig& config, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const sid::RunResult result = sid::run_training(config);
  report::write_run(out_dir, config, result);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "seed " << config.seed << ": " << result.episodes.size() << " episodes, " << result.env_steps
            << " env steps, " << result.learner_steps << " learner steps, final success "
            << sid::final_success_rate(result.episodes) << ", final return " << sid::final_mean_return(result.episodes)
            << " (" << secs << " s) -> " << out_dir << '\n';
  return 0;
}

env::Cell parse_cell(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--anchor", "expected x,y");
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successor-feature control and scheduled intrinsic drive workbench"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "runs/latest";
  std::uint64_t seed = 0;
  bool deterministic = false;
  std::int64_t budget = -1;
  auto* run = app.add_subcommand("run", "Train one agent");
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override run.seed");
  run->add_flag("--deterministic", deterministic, "Single-threaded round-robin mode");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--budget", budget, "Override run.budget (env steps)");

  std::string checkpoint_path, env_name;
  int episodes = 10;
  double epsilon = 0.0;
  auto* eval = app.add_subcommand("eval", "Play the extrinsic head of a checkpoint");
  eval->add_option("--checkpoint", checkpoint_path)->required()->check(CLI::ExistingFile);
  eval->add_option("--env", env_name)->required();
  eval->add_option("--episodes", episodes)->check(CLI::PositiveNumber);
  eval->add_option("--epsilon", epsilon)->check(CLI::Range(0.0, 1.0));
  eval->add_option("--seed", seed);

  std::string kind = "sd", anchor_text, heat_out;
  auto* heatmap = app.add_subcommand("heatmap", "Export an SD or SFC field from a checkpoint");
  heatmap->add_option("--checkpoint", checkpoint_path)->required()->check(CLI::ExistingFile);
  heatmap->add_option("--kind", kind)->check(CLI::IsMember({"sd", "sfc"}));
  heatmap->add_option("--anchor", anchor_text, "x,y (sd only; defaults to the start cell)");
  heatmap->add_option("--out", heat_out, ".pgm for an image, anything else for CSV")->required();

  std::string seeds_text;
  std::int64_t bucket = 10000;
  auto* sweep = app.add_subcommand("sweep", "Train one config over several seeds and aggregate");
  sweep->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  sweep->add_option("--seeds", seeds_text, "Comma-separated seeds")->required();
  sweep->add_option("--out", out_dir);
  sweep->add_option("--bucket", bucket)->check(CLI::PositiveNumber);
  sweep->add_option("--budget", budget);

  std::vector<std::string> run_dirs;
  auto* rep = app.add_subcommand("report", "Aggregate finished runs into curves.csv / curves.svg");
  rep->add_option("--runs", run_dirs)->required()->expected(1, -1);
  rep->add_option("--bucket", bucket)->check(CLI::PositiveNumber);
  rep->add_option("--out", out_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      sid::RunConfig config = report::load_config(config_path);
      if (run->count("--seed")) config.seed = seed;
      if (deterministic) config.deterministic = true;
      if (budget >= 0) config.budget = budget;
      config.validate();
      return run_one(config, out_dir);
    }
    if (*eval) {
      const auto r = sid::evaluate_checkpoint(qlearn::load_checkpoint(checkpoint_path), env_name, episodes, epsilon, seed);
      std::cout << "episodes " << r.episodes << " mean_return " << r.mean_return << " success_rate "
                << r.success_rate << " mean_steps " << r.mean_steps << '\n';
      return 0;
    }
    if (*heatmap) {
      const qlearn::Checkpoint ckpt = qlearn::load_checkpoint(checkpoint_path);
      sid::EnvConfig ec;
      const std::string& name = ckpt.meta.at("env.name");
      if (std::filesystem::exists(name)) ec.map_file = name; else ec.name = name;
      const env::GridEnv env(sid::build_spec(ec));
      const Eigen::MatrixXd& psi = ckpt.arrays.at("sf.psi");
      const env::Cell anchor = anchor_text.empty() ? env.spec().starts.front() : parse_cell(anchor_text);
      const sf::HeatField field = kind == "sd" ? sf::sd_field(env, psi, anchor) : sf::sfc_field(env, psi);
      if (heat_out.ends_with(".pgm")) sf::write_pgm(heat_out, env.spec(), field); else sf::write_csv(heat_out, field);
      std::cout << "wrote " << heat_out << '\n';
      return 0;
    }
    if (*sweep) {
      sid::RunConfig config = report::load_config(config_path);
      if (budget >= 0) config.budget = budget;
      std::vector<std::string> dirs;
      std::stringstream list(seeds_text);
      for (std::string token; std::getline(list, token, ',');) {
        config.seed = std::stoull(token);
        dirs.push_back((std::filesystem::path(out_dir) / ("seed_" + token)).string());
        run_one(config, dirs.back());
      }
      std::vector<report::RunCurve> curves;
      for (const auto& d : dirs) curves.push_back(report::load_run(d));
      const auto summary = report::aggregate(curves, bucket);
      report::emit_plot_data(summary, (std::filesystem::path(out_dir) / "curves.csv").string());
      report::emit_svg(summary, (std::filesystem::path(out_dir) / "curves.svg").string());
      return 0;
    }
    if (*rep) {
      std::vector<report::RunCurve> curves;
      for (const auto& d : run_dirs) curves.push_back(report::load_run(d));
      const auto summary = report::aggregate(curves, bucket);
      std::filesystem::create_directories(out_dir);
      report::emit_plot_data(summary, (std::filesystem::path(out_dir) / "curves.csv").string());
      report::emit_svg(summary, (std::filesystem::path(out_dir) / "curves.svg").string());
      std::cout << "wrote " << summary.points.size() << " buckets to " << out_dir << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

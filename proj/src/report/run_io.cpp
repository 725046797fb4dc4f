#include "sfc/report/run_io.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sfc/report/config.hpp"
#include "sfc/sf/heatmap.hpp"

namespace sfc::report {

void write_run(const std::string& out_dir, const sid::RunConfig& config, const sid::RunResult& result) {
  namespace fs = std::filesystem;
  const fs::path root(out_dir);
  fs::create_directories(root);
  {
    std::ofstream out(root / "config.ini");
    if (!out) throw std::runtime_error("cannot write into " + out_dir);
    out << to_ini(config);
  }
  write_manifest((root / "manifest.json").string(), make_manifest(config, out_dir));
  sid::write_metrics_csv((root / "metrics.csv").string(), result.episodes);
  sid::write_task_log((root / "tasks.csv").string(), result.episodes);
  sid::write_learner_log((root / "learner.csv").string(), result.learner_log);
  qlearn::save_checkpoint((root / "checkpoint.txt").string(), result.checkpoint);

  const env::GridEnv env(sid::build_spec(config.env));
  const Eigen::MatrixXd& psi = result.checkpoint.arrays.at("sf.psi");
  const auto sd = sf::sd_field(env, psi, env.spec().starts.front());
  sf::write_csv((root / "heatmap_sd.csv").string(), sd);
  sf::write_pgm((root / "heatmap_sd.pgm").string(), env.spec(), sd);
  const auto sfc = sf::sfc_field(env, psi);
  sf::write_csv((root / "heatmap_sfc.csv").string(), sfc);
  sf::write_pgm((root / "heatmap_sfc.pgm").string(), env.spec(), sfc);
}

}  // namespace sfc::report

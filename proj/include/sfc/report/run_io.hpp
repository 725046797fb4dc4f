#pragma once

#include <string>

#include "sfc/sid/config.hpp"
#include "sfc/sid/trainer.hpp"

namespace sfc::report {

// Writes config.ini, manifest.json, metrics.csv, tasks.csv, learner.csv,
// checkpoint.txt and SD / SFC heatmaps (csv + pgm) into `out_dir`.
void write_run(const std::string& out_dir, const sid::RunConfig& config, const sid::RunResult& result);

}  // namespace sfc::report

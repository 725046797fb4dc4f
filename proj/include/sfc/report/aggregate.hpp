#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfc/sid/trainer.hpp"

namespace sfc::report {

struct RunCurve {
  std::string env_name;
  std::vector<sid::EpisodeRecord> episodes;
};

struct CurvePoint {
  std::int64_t bucket_start = 0;
  double mean = 0.0;
  double std = 0.0;  // population convention (divide by n)
};

struct CurveSummary {
  std::string env_name;
  std::int64_t bucket_size = 0;
  std::size_t runs = 0;
  std::vector<CurvePoint> points;
};

// Per-bucket mean/std of episode return across runs. A run contributes the
// mean return of the episodes ending inside a bucket, or carries its last
// value forward when the bucket is empty. Buckets before every run has
// produced an episode are omitted.
CurveSummary aggregate(const std::vector<RunCurve>& runs, std::int64_t bucket_size);

// Reads <dir>/metrics.csv and the env name from <dir>/manifest.json.
RunCurve load_run(const std::string& dir);

void emit_plot_data(const CurveSummary& summary, const std::string& csv_path);
void emit_svg(const CurveSummary& summary, const std::string& svg_path);
CurveSummary read_plot_data(const std::string& csv_path);

}  // namespace sfc::report

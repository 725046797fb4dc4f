#include "sfc/report/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "sfc/report/config.hpp"

namespace sfc::report {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::int64_t bucket_of(std::int64_t env_steps, std::int64_t size) {
  return env_steps > 0 ? (env_steps - 1) / size : 0;
}

}  // namespace

CurveSummary aggregate(const std::vector<RunCurve>& runs, std::int64_t bucket_size) {
  if (runs.empty()) throw std::invalid_argument("aggregate needs at least one run");
  if (bucket_size <= 0) throw std::invalid_argument("bucket size must be positive");
  for (const RunCurve& r : runs)
    if (r.env_name != runs.front().env_name)
      throw std::invalid_argument("runs disagree on environment: " + runs.front().env_name + " vs " + r.env_name);

  std::vector<std::map<std::int64_t, std::pair<double, int>>> per_run(runs.size());
  std::int64_t last = -1;
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (const sid::EpisodeRecord& e : runs[i].episodes) {
      const std::int64_t b = bucket_of(e.env_steps, bucket_size);
      auto& cell = per_run[i][b];
      cell.first += e.extrinsic_return;
      ++cell.second;
      last = std::max(last, b);
    }

  CurveSummary out;
  out.env_name = runs.front().env_name;
  out.bucket_size = bucket_size;
  out.runs = runs.size();
  std::vector<std::optional<double>> carried(runs.size());
  for (std::int64_t b = 0; b <= last; ++b) {
    for (std::size_t i = 0; i < runs.size(); ++i)
      if (auto it = per_run[i].find(b); it != per_run[i].end())
        carried[i] = it->second.first / it->second.second;
    if (std::any_of(carried.begin(), carried.end(), [](const auto& v) { return !v.has_value(); })) continue;
    double mean = 0.0;
    for (const auto& v : carried) mean += *v;
    mean /= static_cast<double>(runs.size());
    double var = 0.0;
    for (const auto& v : carried) var += (*v - mean) * (*v - mean);
    var /= static_cast<double>(runs.size());
    out.points.push_back({b * bucket_size, mean, std::sqrt(var)});
  }
  return out;
}

RunCurve load_run(const std::string& dir) {
  const std::filesystem::path root(dir);
  RunCurve run;
  run.env_name = read_manifest((root / "manifest.json").string()).env_name;
  run.episodes = sid::read_metrics_csv((root / "metrics.csv").string());
  return run;
}

void emit_plot_data(const CurveSummary& summary, const std::string& csv_path) {
  if (summary.points.empty()) throw std::invalid_argument("nothing to plot: summary is empty");
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot write " + csv_path);
  out << "# std: population (divide by n)\n"
      << "# env: " << summary.env_name << '\n'
      << "# bucket_size: " << summary.bucket_size << '\n'
      << "# runs: " << summary.runs << '\n'
      << "bucket_start,mean,std\n";
  for (const CurvePoint& p : summary.points) out << p.bucket_start << ',' << fmt(p.mean) << ',' << fmt(p.std) << '\n';
  if (!out) throw std::runtime_error("write failed for " + csv_path);
}

CurveSummary read_plot_data(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot read " + csv_path);
  CurveSummary s;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto colon = line.find(':');
      const std::string key = line.substr(2, colon - 2);
      const std::string value = colon == std::string::npos ? "" : line.substr(colon + 2);
      if (key == "env") s.env_name = value;
      if (key == "bucket_size") s.bucket_size = std::stoll(value);
      if (key == "runs") s.runs = std::stoul(value);
      continue;
    }
    if (line.rfind("bucket_start", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    CurvePoint p;
    if (!(row >> p.bucket_start >> p.mean >> p.std)) throw std::runtime_error(csv_path + ": malformed row");
    s.points.push_back(p);
  }
  return s;
}

void emit_svg(const CurveSummary& summary, const std::string& svg_path) {
  if (summary.points.empty()) throw std::invalid_argument("nothing to plot: summary is empty");
  constexpr double width = 640, height = 400, left = 60, right = 20, top = 30, bottom = 50;
  double x_lo = static_cast<double>(summary.points.front().bucket_start);
  double x_hi = static_cast<double>(summary.points.back().bucket_start);
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  double y_lo = 0.0, y_hi = 0.0;
  for (const CurvePoint& p : summary.points) {
    y_lo = std::min(y_lo, p.mean - p.std);
    y_hi = std::max(y_hi, p.mean + p.std);
  }
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * (width - left - right); };
  auto sy = [&](double y) { return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom); };

  std::ostringstream band, line;
  for (const CurvePoint& p : summary.points) band << fmt(sx(p.bucket_start)) << ',' << fmt(sy(p.mean + p.std)) << ' ';
  for (auto it = summary.points.rbegin(); it != summary.points.rend(); ++it)
    band << fmt(sx(it->bucket_start)) << ',' << fmt(sy(it->mean - it->std)) << ' ';
  for (const CurvePoint& p : summary.points) line << fmt(sx(p.bucket_start)) << ',' << fmt(sy(p.mean)) << ' ';

  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("cannot write " + svg_path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n"
      << "  <title>" << summary.env_name << ": mean return, +/-1 std over " << summary.runs << " runs</title>\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
      << "  <line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n"
      << "  <polygon points=\"" << band.str() << "\" fill=\"steelblue\" fill-opacity=\"0.25\" stroke=\"none\"/>\n"
      << "  <polyline points=\"" << line.str() << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n"
      << "  <text x=\"" << width / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">env steps</text>\n"
      << "  <text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 " << height / 2
      << ")\" text-anchor=\"middle\">return</text>\n"
      << "  <text x=\"" << left << "\" y=\"" << top - 10 << "\">" << fmt(y_hi) << "</text>\n"
      << "  <text x=\"" << left << "\" y=\"" << height - bottom + 15 << "\">" << fmt(y_lo) << "</text>\n"
      << "</svg>\n";
}

}  // namespace sfc::report

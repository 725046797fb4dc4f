#include "sfc/sf/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <stdexcept>

#include "sfc/sf/successor.hpp"

namespace sfc::sf {

HeatField sd_field(const env::GridEnv& env, const Eigen::MatrixXd& psi, env::Cell anchor) {
  const int a = env.state_id(anchor, 0);
  HeatField out;
  for (const env::Cell& c : env.open_cells())
    out.push_back({c, successor_distance(psi, env.state_id(c, 0), a)});
  return out;
}

HeatField sfc_field(const env::GridEnv& env, const Eigen::MatrixXd& psi) {
  HeatField out;
  for (const env::Cell& c : env.open_cells()) {
    std::set<env::Cell> neighbours;
    for (int a = 0; a < env::kActionCount; ++a) {
      env::Cell n = env::move(c, static_cast<env::Action>(a));
      if (env.spec().is_open(n)) neighbours.insert(n);
    }
    double sum = 0.0;
    const int s = env.state_id(c, 0);
    for (const env::Cell& n : neighbours) sum += (psi.row(env.state_id(n, 0)) - psi.row(s)).squaredNorm();
    out.push_back({c, neighbours.empty() ? 0.0 : sum / static_cast<double>(neighbours.size())});
  }
  return out;
}

void write_csv(const std::string& path, const HeatField& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "x,y,value\n" << std::setprecision(17);
  for (const HeatCell& h : field) out << h.cell.x << ',' << h.cell.y << ',' << h.value << '\n';
}

void write_pgm(const std::string& path, const env::GridSpec& spec, const HeatField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  double lo = INFINITY, hi = -INFINITY;
  for (const HeatCell& h : field) {
    lo = std::min(lo, h.value);
    hi = std::max(hi, h.value);
  }
  std::vector<unsigned char> pixels(static_cast<std::size_t>(spec.width * spec.height), 0);
  for (const HeatCell& h : field) {
    const double t = hi > lo ? (h.value - lo) / (hi - lo) : 0.0;
    pixels[static_cast<std::size_t>(h.cell.y * spec.width + h.cell.x)] =
        static_cast<unsigned char>(1 + std::lround(t * 254.0));
  }
  out << "P5\n" << spec.width << ' ' << spec.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace sfc::sf

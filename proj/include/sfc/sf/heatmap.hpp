#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sfc/env/grid.hpp"

namespace sfc::sf {

struct HeatCell {
  env::Cell cell;
  double value = 0.0;
};

using HeatField = std::vector<HeatCell>;

// Successor distance from every open cell (zero-apples layer) to `anchor`.
HeatField sd_field(const env::GridEnv& env, const Eigen::MatrixXd& psi, env::Cell anchor);

// Mean one-step SFC reward over the distinct cells reachable from each cell.
HeatField sfc_field(const env::GridEnv& env, const Eigen::MatrixXd& psi);

// "x,y,value" rows with a header line.
void write_csv(const std::string& path, const HeatField& field);
// Binary grayscale PGM; walls are black, open cells scaled into 1..255.
void write_pgm(const std::string& path, const env::GridSpec& spec, const HeatField& field);

}  // namespace sfc::sf

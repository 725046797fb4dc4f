#pragma once

#include <map>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "sfc/features/embedding.hpp"
#include "sfc/qlearn/value.hpp"

namespace sfc::qlearn {

inline constexpr const char* kCheckpointTag = "sfc-checkpoint";
inline constexpr int kCheckpointVersion = 1;

// Named arrays plus string metadata. Values are written as hex floats so a
// save/load cycle is bit-exact.
struct Checkpoint {
  std::map<std::string, std::string> meta;
  std::map<std::string, Eigen::MatrixXd> arrays;
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
Checkpoint read_checkpoint(std::istream& in);

void export_value(Checkpoint& ckpt, const ValueApproximator& q, const std::string& prefix = "q");
// Dense checkpoints need the embedding they were trained with.
ValueApproximator import_value(const Checkpoint& ckpt, std::shared_ptr<const features::Embedding> phi,
                               const std::string& prefix = "q");

}  // namespace sfc::qlearn

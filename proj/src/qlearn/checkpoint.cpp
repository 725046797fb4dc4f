#include "sfc/qlearn/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sfc::qlearn {

namespace {

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') throw std::runtime_error("checkpoint: bad number '" + token + "'");
  return v;
}

const std::string& meta_at(const Checkpoint& c, const std::string& key) {
  auto it = c.meta.find(key);
  if (it == c.meta.end()) throw std::runtime_error("checkpoint: missing meta '" + key + "'");
  return it->second;
}

const Eigen::MatrixXd& array_at(const Checkpoint& c, const std::string& key) {
  auto it = c.arrays.find(key);
  if (it == c.arrays.end()) throw std::runtime_error("checkpoint: missing array '" + key + "'");
  return it->second;
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  out << kCheckpointTag << ' ' << kCheckpointVersion << '\n';
  for (const auto& [k, v] : ckpt.meta) {
    if (k.find_first_of(" \n") != std::string::npos || v.find('\n') != std::string::npos)
      throw std::invalid_argument("checkpoint meta must be single-line with a space-free key");
    out << "meta " << k << ' ' << v << '\n';
  }
  for (const auto& [name, m] : ckpt.arrays) {
    out << "array " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << hex(m(r, c));
      out << '\n';
    }
  }
  out << "end\n";
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != kCheckpointTag) throw std::runtime_error("checkpoint: missing header");
  if (version != kCheckpointVersion)
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  Checkpoint ckpt;
  std::string kind;
  while (in >> kind) {
    if (kind == "end") return ckpt;
    if (kind == "meta") {
      std::string key, value;
      in >> key;
      std::getline(in, value);
      if (!value.empty() && value.front() == ' ') value.erase(0, 1);
      ckpt.meta[key] = value;
    } else if (kind == "array") {
      std::string name;
      Eigen::Index rows = 0, cols = 0;
      if (!(in >> name >> rows >> cols) || rows < 0 || cols < 0) throw std::runtime_error("checkpoint: bad array header");
      Eigen::MatrixXd m(rows, cols);
      std::string token;
      for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
          if (!(in >> token)) throw std::runtime_error("checkpoint: truncated array " + name);
          m(r, c) = parse_double(token);
        }
      ckpt.arrays[name] = std::move(m);
    } else {
      throw std::runtime_error("checkpoint: unexpected record '" + kind + "'");
    }
  }
  throw std::runtime_error("checkpoint: missing end marker");
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path);
  write_checkpoint(out, ckpt);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  return read_checkpoint(in);
}

void export_value(Checkpoint& ckpt, const ValueApproximator& q, const std::string& prefix) {
  ckpt.meta[prefix + ".mode"] = to_string(q.mode());
  ckpt.meta[prefix + ".num_states"] = std::to_string(q.num_states());
  ckpt.meta[prefix + ".num_actions"] = std::to_string(q.num_actions());
  ckpt.meta[prefix + ".gamma_e"] = hex(q.gamma(TaskId::Extrinsic));
  ckpt.meta[prefix + ".gamma_i"] = hex(q.gamma(TaskId::Intrinsic));
  if (const TabularQ* t = q.tabular_impl()) {
    ckpt.meta[prefix + ".alpha"] = hex(t->alpha);
    ckpt.arrays[prefix + ".extrinsic"] = t->tables[0];
    ckpt.arrays[prefix + ".intrinsic"] = t->tables[1];
  } else {
    const DenseQ& d = *q.dense_impl();
    ckpt.meta[prefix + ".rate"] = hex(d.rate());
    ckpt.meta[prefix + ".hidden"] = std::to_string(d.hidden());
    ckpt.arrays[prefix + ".parameters"] = d.flat_parameters();
  }
}

ValueApproximator import_value(const Checkpoint& ckpt, std::shared_ptr<const features::Embedding> phi,
                               const std::string& prefix) {
  const Mode mode = mode_from_string(meta_at(ckpt, prefix + ".mode"));
  const int num_states = std::stoi(meta_at(ckpt, prefix + ".num_states"));
  const int num_actions = std::stoi(meta_at(ckpt, prefix + ".num_actions"));
  auto finish = [&](ValueApproximator q) {
    q.set_gamma(TaskId::Extrinsic, parse_double(meta_at(ckpt, prefix + ".gamma_e")));
    q.set_gamma(TaskId::Intrinsic, parse_double(meta_at(ckpt, prefix + ".gamma_i")));
    return q;
  };
  if (mode == Mode::Tabular) {
    auto q = ValueApproximator::tabular(num_states, num_actions, parse_double(meta_at(ckpt, prefix + ".alpha")));
    TabularQ& t = *q.tabular_impl();
    t.tables[0] = array_at(ckpt, prefix + ".extrinsic");
    t.tables[1] = array_at(ckpt, prefix + ".intrinsic");
    for (const auto& table : t.tables)
      if (table.rows() != num_states || table.cols() != num_actions)
        throw std::runtime_error("checkpoint: table shape mismatch");
    return finish(std::move(q));
  }
  if (!phi || phi->num_states() != num_states) throw std::runtime_error("checkpoint: dense import needs matching embedding");
  auto q = ValueApproximator::dense(std::move(phi), num_actions, parse_double(meta_at(ckpt, prefix + ".rate")), 0,
                                    std::stoi(meta_at(ckpt, prefix + ".hidden")));
  q.dense_impl()->set_flat_parameters(array_at(ckpt, prefix + ".parameters"));
  return finish(std::move(q));
}

}  // namespace sfc::qlearn

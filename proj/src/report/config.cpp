#include "sfc/report/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

namespace sfc::report {

namespace {

using sid::RunConfig;

struct Key {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

long long to_int(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("not a boolean: " + s);
}

template <typename T>
Key real(T RunConfig::*section, double T::*field) {
  return {[=](RunConfig& c, const std::string& v) { c.*section.*field = to_double(v); },
          [=](const RunConfig& c) { return num(c.*section.*field); }};
}

template <typename T, typename I>
Key integer(T RunConfig::*section, I T::*field) {
  return {[=](RunConfig& c, const std::string& v) { c.*section.*field = static_cast<I>(to_int(v)); },
          [=](const RunConfig& c) { return std::to_string(c.*section.*field); }};
}

template <typename T, typename E>
Key enumeration(T RunConfig::*section, E T::*field, E (*parse)(const std::string&), std::string (*show)(E)) {
  return {[=](RunConfig& c, const std::string& v) { c.*section.*field = parse(v); },
          [=](const RunConfig& c) { return show(c.*section.*field); }};
}

const std::map<std::string, Key>& keys() {
  using namespace sid;
  static const std::map<std::string, Key> table = {
      {"env.name", {[](RunConfig& c, const std::string& v) { c.env.name = v; },
                    [](const RunConfig& c) { return c.env.name; }}},
      {"env.map_file", {[](RunConfig& c, const std::string& v) { c.env.map_file = v; },
                        [](const RunConfig& c) { return c.env.map_file; }}},
      {"env.max_steps", integer(&RunConfig::env, &EnvConfig::max_steps)},
      {"embedding.kind", enumeration(&RunConfig::embedding, &EmbeddingConfig::kind,
                                     &features::embedding_kind_from_string, &features::to_string)},
      {"embedding.dim", integer(&RunConfig::embedding, &EmbeddingConfig::dim)},
      {"embedding.seed", integer(&RunConfig::embedding, &EmbeddingConfig::seed)},
      {"sf.gamma", real(&RunConfig::sf, &SfConfig::gamma)},
      {"sf.alpha", real(&RunConfig::sf, &SfConfig::alpha)},
      {"sf.convention",
       enumeration(&RunConfig::sf, &SfConfig::convention, &sf::convention_from_string, &sf::to_string)},
      {"intrinsic.kind", enumeration(&RunConfig::intrinsic, &IntrinsicConfig::kind, &intrinsic_kind_from_string,
                                     static_cast<std::string (*)(IntrinsicKind)>(&sid::to_string))},
      {"intrinsic.eta", real(&RunConfig::intrinsic, &IntrinsicConfig::eta)},
      {"intrinsic.gamma_i", real(&RunConfig::intrinsic, &IntrinsicConfig::gamma_i)},
      {"intrinsic.scale", real(&RunConfig::intrinsic, &IntrinsicConfig::scale)},
      {"intrinsic.hidden", integer(&RunConfig::intrinsic, &IntrinsicConfig::hidden)},
      {"intrinsic.rate", real(&RunConfig::intrinsic, &IntrinsicConfig::rate)},
      {"intrinsic.rnd_out", integer(&RunConfig::intrinsic, &IntrinsicConfig::rnd_out)},
      {"q.mode", enumeration(&RunConfig::q, &QConfig::mode, &qlearn::mode_from_string, &qlearn::to_string)},
      {"q.gamma_e", real(&RunConfig::q, &QConfig::gamma_e)},
      {"q.gamma_i", real(&RunConfig::q, &QConfig::gamma_i)},
      {"q.alpha", real(&RunConfig::q, &QConfig::alpha)},
      {"q.sync_interval", integer(&RunConfig::q, &QConfig::sync_interval)},
      {"q.dense_rate", real(&RunConfig::q, &QConfig::dense_rate)},
      {"q.dense_hidden", integer(&RunConfig::q, &QConfig::dense_hidden)},
      {"replay.main_capacity", integer(&RunConfig::replay, &replay::BufferConfig::main_capacity)},
      {"replay.high_capacity", integer(&RunConfig::replay, &replay::BufferConfig::high_capacity)},
      {"replay.batch", integer(&RunConfig::replay, &replay::BufferConfig::batch)},
      {"replay.high_share", integer(&RunConfig::replay, &replay::BufferConfig::high_share)},
      {"scheduler.kind", enumeration(&RunConfig::scheduler, &SchedulerConfig::kind, &scheduler_kind_from_string,
                                     static_cast<std::string (*)(SchedulerKind)>(&sid::to_string))},
      {"scheduler.slots", integer(&RunConfig::scheduler, &SchedulerConfig::slots)},
      {"scheduler.threshold_variant",
       enumeration(&RunConfig::scheduler, &SchedulerConfig::threshold_variant, &threshold_variant_from_string,
                   static_cast<std::string (*)(ThresholdVariant)>(&sid::to_string))},
      {"scheduler.threshold", real(&RunConfig::scheduler, &SchedulerConfig::threshold)},
      {"scheduler.macro_alpha", real(&RunConfig::scheduler, &SchedulerConfig::macro_alpha)},
      {"scheduler.macro_epsilon", real(&RunConfig::scheduler, &SchedulerConfig::macro_epsilon)},
      {"agent.kind", enumeration(&RunConfig::agent, &AgentConfig::kind, &agent_kind_from_string,
                                 static_cast<std::string (*)(AgentKind)>(&sid::to_string))},
      {"agent.actors", integer(&RunConfig::agent, &AgentConfig::actors)},
      {"agent.k", integer(&RunConfig::agent, &AgentConfig::k)},
      {"agent.epsilon_base", real(&RunConfig::agent, &AgentConfig::epsilon_base)},
      {"agent.epsilon_alpha", real(&RunConfig::agent, &AgentConfig::epsilon_alpha)},
      {"agent.snapshot_interval", integer(&RunConfig::agent, &AgentConfig::snapshot_interval)},
      {"run.budget", {[](RunConfig& c, const std::string& v) { c.budget = to_int(v); },
                      [](const RunConfig& c) { return std::to_string(c.budget); }}},
      {"run.seed", {[](RunConfig& c, const std::string& v) { c.seed = static_cast<std::uint64_t>(to_int(v)); },
                    [](const RunConfig& c) { return std::to_string(c.seed); }}},
      {"run.deterministic", {[](RunConfig& c, const std::string& v) { c.deterministic = to_bool(v); },
                             [](const RunConfig& c) { return std::string(c.deterministic ? "true" : "false"); }}},
      {"run.learner_steps_per_episode",
       {[](RunConfig& c, const std::string& v) { c.learner_steps_per_episode = static_cast<int>(to_int(v)); },
        [](const RunConfig& c) { return std::to_string(c.learner_steps_per_episode); }}},
      {"run.learn_start", {[](RunConfig& c, const std::string& v) { c.learn_start = to_int(v); },
                           [](const RunConfig& c) { return std::to_string(c.learn_start); }}},
      {"run.log_interval", {[](RunConfig& c, const std::string& v) { c.log_interval = static_cast<int>(to_int(v)); },
                            [](const RunConfig& c) { return std::to_string(c.log_interval); }}},
  };
  return table;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

sid::RunConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config syntax: ") + e.what());
  }
  RunConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw std::invalid_argument("config key '" + section + "' is outside any section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      auto it = keys().find(full);
      if (it == keys().end()) throw std::invalid_argument("unknown config key: " + full);
      try {
        it->second.set(config, value.get_value<std::string>());
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(full + ": " + e.what());
      } catch (const std::out_of_range& e) {
        throw std::invalid_argument(full + ": value out of range");
      }
    }
  }
  return config;
}

sid::RunConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

sid::RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return parse_config(in);
}

std::string to_ini(const sid::RunConfig& config) {
  std::ostringstream out;
  std::string current;
  for (const auto& [full, key] : keys()) {
    const auto dot = full.find('.');
    const std::string section = full.substr(0, dot);
    if (section != current) {
      out << (current.empty() ? "" : "\n") << '[' << section << "]\n";
      current = section;
    }
    out << full.substr(dot + 1) << " = " << key.get(config) << '\n';
  }
  return out.str();
}

std::string config_hash(const sid::RunConfig& config) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_ini(config))));
  return buf;
}

RunManifest make_manifest(const sid::RunConfig& config, const std::string& out_dir) {
  RunManifest m;
  m.config_hash = config_hash(config);
  m.seeds = {config.seed};
  m.env_name = config.env.map_file.empty() ? config.env.name : config.env.map_file;
  m.metrics_path = (std::filesystem::path(out_dir) / "metrics.csv").string();
  m.checkpoint_path = (std::filesystem::path(out_dir) / "checkpoint.txt").string();
  return m;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json j;
  j["config_hash"] = manifest.config_hash;
  j["seeds"] = manifest.seeds;
  j["version"] = manifest.version;
  j["env"] = manifest.env_name;
  j["metrics"] = manifest.metrics_path;
  j["checkpoint"] = manifest.checkpoint_path;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  const nlohmann::json j = nlohmann::json::parse(in);
  RunManifest m;
  m.config_hash = j.at("config_hash").get<std::string>();
  m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  m.version = j.at("version").get<std::string>();
  m.env_name = j.at("env").get<std::string>();
  m.metrics_path = j.at("metrics").get<std::string>();
  m.checkpoint_path = j.at("checkpoint").get<std::string>();
  return m;
}

}  // namespace sfc::report

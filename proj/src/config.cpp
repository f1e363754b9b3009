#include "mri/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace mri {

ConfigError::ConfigError(const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

RunConfig default_run_config() {
  RunConfig c;
  ProblemRef p;
  p.name = kTwoGaussian;
  c.experiment.problems = {p};
  c.experiment.classifiers = {ClassifierSpec::lda()};
  c.experiment.strategies = {StrategyKind::Random, StrategyKind::Entropy};
  c.experiment.replicates = 2;
  return c;
}

namespace {

constexpr const char* kAuto = "auto";

std::size_t line_of(const YAML::Node& n) {
  const auto mark = n.Mark();
  return mark.line < 0 ? 0 : static_cast<std::size_t>(mark.line) + 1;
}

[[noreturn]] void fail(const YAML::Node& n, const std::string& message) { throw ConfigError(message, line_of(n)); }

std::string scalar(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) fail(n, "'" + key + "' must be a scalar");
  return n.Scalar();
}

std::uint64_t as_u64(const YAML::Node& n, const std::string& key) {
  const std::string s = scalar(n, key);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(n, "'" + key + "' must be a nonnegative integer, got '" + s + "'");
  }
  return v;
}

std::size_t as_size(const YAML::Node& n, const std::string& key) {
  return static_cast<std::size_t>(as_u64(n, key));
}

std::optional<std::size_t> as_optional_size(const YAML::Node& n, const std::string& key) {
  if (n.IsScalar() && n.Scalar() == kAuto) return std::nullopt;
  return as_size(n, key);
}

template <typename F>
auto convert(const YAML::Node& n, const std::string& key, F f) {
  const std::string s = scalar(n, key);
  try {
    return f(s);
  } catch (const std::exception& e) {
    fail(n, "'" + key + "': " + e.what());
  }
}

std::vector<YAML::Node> sequence(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence()) fail(n, "'" + key + "' must be a list");
  std::vector<YAML::Node> out;
  for (const auto& item : n) out.push_back(item);
  return out;
}

/// Visit every key of a mapping, rejecting unknown and duplicate keys.
template <typename F>
void for_each_key(const YAML::Node& map, const std::string& what, const std::set<std::string>& allowed, F f) {
  if (!map.IsMap()) fail(map, what + " must be a mapping");
  std::set<std::string> seen;
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.contains(key)) fail(kv.first, "unknown key '" + key + "' in " + what);
    if (!seen.insert(key).second) fail(kv.first, "duplicate key '" + key + "' in " + what);
    f(key, kv.second);
  }
}

ProblemRef parse_problem(const YAML::Node& node) {
  ProblemRef p;
  bool has_name = false;
  for_each_key(node, "problem", {"name", "csv", "label_column", "group", "pool", "initial", "test"},
               [&](const std::string& key, const YAML::Node& v) {
                 if (key == "name") {
                   p.name = scalar(v, key);
                   has_name = true;
                 } else if (key == "csv") {
                   p.csv = scalar(v, key);
                 } else if (key == "label_column") {
                   p.label_column = scalar(v, key);
                 } else if (key == "group") {
                   const std::string g = scalar(v, key);
                   p.group = g == kAuto ? "" : g;
                 } else if (key == "pool") {
                   p.pool = as_size(v, key);
                 } else if (key == "initial") {
                   p.initial = as_optional_size(v, key);
                 } else if (key == "test") {
                   p.test = as_optional_size(v, key);
                 }
               });
  if (!has_name) fail(node, "problem is missing 'name'");
  if (p.synthetic()) {
    try {
      make_problem(p.name);
    } catch (const std::exception& e) {
      fail(node, e.what());
    }
  }
  return p;
}

RunConfig parse_root(const YAML::Node& root) {
  RunConfig c;
  ExperimentConfig& e = c.experiment;
  std::set<std::string> present;
  const std::set<std::string> keys{"seed",     "replicates", "jobs",        "out",        "loss",
                                   "subsample", "n_b",       "aggregate",   "theta2",     "oracle_test",
                                   "committee", "classifiers", "strategies", "problems"};
  for_each_key(root, "configuration", keys, [&](const std::string& key, const YAML::Node& v) {
    present.insert(key);
    if (key == "seed") {
      e.seed = as_u64(v, key);
    } else if (key == "replicates") {
      e.replicates = as_size(v, key);
    } else if (key == "jobs") {
      c.jobs = as_size(v, key);
    } else if (key == "out") {
      c.out = scalar(v, key);
    } else if (key == "loss") {
      e.loss = convert(v, key, [](const std::string& s) { return parse_loss_kind(s); });
    } else if (key == "subsample") {
      e.strategy.subsample = as_size(v, key);
    } else if (key == "n_b") {
      e.strategy.n_b = as_size(v, key);
    } else if (key == "aggregate") {
      const std::string s = scalar(v, key);
      if (s == "median") {
        e.strategy.aggregate = BootstrapAggregate::Median;
      } else if (s == "mean") {
        e.strategy.aggregate = BootstrapAggregate::Mean;
      } else {
        fail(v, "'aggregate' must be median or mean, got '" + s + "'");
      }
    } else if (key == "theta2") {
      const std::string s = scalar(v, key);
      if (s == kAuto) {
        e.strategy.theta2.reset();
      } else {
        e.strategy.theta2 = convert(v, key, [](const std::string& t) { return parse_classifier(t); });
      }
    } else if (key == "oracle_test") {
      e.oracle_test = as_size(v, key);
    } else if (key == "committee") {
      e.strategy.committee.members.clear();
      for (const auto& item : sequence(v, key)) {
        e.strategy.committee.members.push_back(
            convert(item, key, [](const std::string& t) { return parse_classifier(t); }));
      }
    } else if (key == "classifiers") {
      for (const auto& item : sequence(v, key)) {
        e.classifiers.push_back(convert(item, key, [](const std::string& t) { return parse_classifier(t); }));
      }
    } else if (key == "strategies") {
      for (const auto& item : sequence(v, key)) {
        e.strategies.push_back(convert(item, key, [](const std::string& t) { return parse_strategy(t); }));
      }
    } else if (key == "problems") {
      for (const auto& item : sequence(v, key)) e.problems.push_back(parse_problem(item));
    }
  });
  for (const char* required : {"problems", "classifiers", "strategies"}) {
    if (!present.contains(required)) fail(root, std::string("missing required key '") + required + "'");
  }
  if (c.jobs == 0) fail(root["jobs"], "'jobs' must be >= 1");
  try {
    e.validate();
  } catch (const std::invalid_argument& ex) {
    fail(root, ex.what());
  }
  return c;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& ex) {
    throw ConfigError(ex.msg, ex.mark.line < 0 ? 0 : static_cast<std::size_t>(ex.mark.line) + 1);
  }
  if (!root || root.IsNull()) throw ConfigError("configuration is empty", 0);
  try {
    return parse_root(root);
  } catch (const YAML::Exception& ex) {
    throw ConfigError(ex.msg, ex.mark.line < 0 ? 0 : static_cast<std::size_t>(ex.mark.line) + 1);
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string print_run_config(const RunConfig& config) {
  const ExperimentConfig& e = config.experiment;
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << e.seed;
  out << YAML::Key << "replicates" << YAML::Value << e.replicates;
  out << YAML::Key << "jobs" << YAML::Value << config.jobs;
  out << YAML::Key << "out" << YAML::Value << config.out;
  out << YAML::Key << "loss" << YAML::Value << to_string(e.loss);
  out << YAML::Key << "subsample" << YAML::Value << e.strategy.subsample;
  out << YAML::Key << "n_b" << YAML::Value << e.strategy.n_b;
  out << YAML::Key << "aggregate" << YAML::Value
      << (e.strategy.aggregate == BootstrapAggregate::Median ? "median" : "mean");
  out << YAML::Key << "theta2" << YAML::Value << (e.strategy.theta2 ? e.strategy.theta2->name() : kAuto);
  out << YAML::Key << "oracle_test" << YAML::Value << e.oracle_test;
  out << YAML::Key << "committee" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& m : e.strategy.committee.members) out << m.name();
  out << YAML::EndSeq;
  out << YAML::Key << "classifiers" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& m : e.classifiers) out << m.name();
  out << YAML::EndSeq;
  out << YAML::Key << "strategies" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto s : e.strategies) out << to_string(s);
  out << YAML::EndSeq;
  out << YAML::Key << "problems" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : e.problems) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << p.name;
    if (!p.synthetic()) {
      out << YAML::Key << "csv" << YAML::Value << p.csv;
      out << YAML::Key << "label_column" << YAML::Value << p.label_column;
    }
    out << YAML::Key << "group" << YAML::Value << (p.group.empty() ? kAuto : p.group);
    out << YAML::Key << "pool" << YAML::Value << p.pool;
    out << YAML::Key << "initial" << YAML::Value << (p.initial ? std::to_string(*p.initial) : kAuto);
    out << YAML::Key << "test" << YAML::Value << (p.test ? std::to_string(*p.test) : kAuto);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace mri

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "mri/experiment.hpp"

namespace mri {

/// Experiment settings plus where and how to run them.
struct RunConfig {
  ExperimentConfig experiment;
  std::string out = "results";
  std::size_t jobs = 1;

  bool operator==(const RunConfig&) const = default;
};

/// Invalid configuration. `line` is 1-based, 0 when no position applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A small example experiment (two-gaussian, LDA, rs and se, two replicates).
RunConfig default_run_config();

/// Parse a YAML document. Unknown keys, wrong types and invalid values raise
/// ConfigError naming the offending line.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// YAML with every setting written out, including defaults. Re-parses to an
/// equal RunConfig.
std::string print_run_config(const RunConfig& config);

}  // namespace mri

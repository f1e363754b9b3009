#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mri/analytic.hpp"

namespace mri::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> jobs;
  bool quiet = false;
};
int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);

struct PrintConfigArgs {
  std::optional<std::string> config;  // defaults when absent
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> jobs;
};
int cmd_print_config(const PrintConfigArgs& args, std::ostream& out, std::ostream& err);

struct AnalyticArgs {
  std::string case_name;
  std::optional<double> mu1, mu2;  // override the named case
  int n = 18;
  analytic::Grid grid;
  std::string out;  // empty: stdout
};
int cmd_analytic(const AnalyticArgs& args, std::ostream& out, std::ostream& err);

struct GuaranteeArgs {
  std::vector<double> sigmas{1e-9, 0.1, 1.0, 10.0, 1e6};
  double delta = 1.0;
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  std::string out;
};
int cmd_guarantee(const GuaranteeArgs& args, std::ostream& out, std::ostream& err);

/// Parse the command line and dispatch to a subcommand.
int run_main(int argc, char** argv);

}  // namespace mri::cli

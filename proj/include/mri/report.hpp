#pragma once

#include <filesystem>
#include <string>

#include "mri/experiment.hpp"

namespace mri {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

std::string curves_csv(const ExperimentResult& result);
std::string metrics_csv(const ExperimentSummary& summary);
std::string ranks_json(const ExperimentSummary& summary);

/// Writes curves.csv, metrics.csv, ranks.json and, when runs failed,
/// diagnostics.txt into `dir` (created if needed).
void write_report(const std::filesystem::path& dir, const ExperimentResult& result,
                  const ExperimentSummary& summary);

}  // namespace mri

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tgv/analysis.hpp"
#include "tgv/model.hpp"

namespace tgv {

// Version string baked in at build time; echoed into every report.
const char* tool_version();

// Identifier of the JSON layout written by report_to_json.  Bumped whenever
// a field changes meaning, so consumers can hard-fail on layouts they do
// not understand.
const char* report_schema();

// How (and whether) synthetic noise was applied before solving.
struct NoiseSpec {
  bool applied = false;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

// Everything needed to audit or reproduce one solver run.  The requested
// spec is kept verbatim and the effective values (after defaulting) are
// echoed separately, so a report is reproducible without knowing the
// tool's defaults.  Serializes losslessly: report_from_json(report_to_json(r))
// compares equal to r, including infinite PSNR values.
struct RunReport {
  std::string schema;
  std::string tool_version;
  std::string command;
  std::string input_digest;
  ModelSpec spec;
  double sigma_used = 0.0;
  double tau_used = 0.0;
  std::optional<double> lambda_used;
  std::optional<double> alpha0_used;
  std::optional<double> alpha1_used;
  NoiseSpec noise;
  std::optional<MetricPair> metric;
  double final_energy = 0.0;
  std::vector<double> energy_trace;
  std::optional<double> value_classic;
  std::optional<double> value_new;
  int iterations = 0;
  double wall_seconds = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

// Fills schema/tool_version and the effective-parameter echo for a spec.
RunReport make_report(const std::string& command, const ModelSpec& spec);

std::string report_to_json(const RunReport& report, int indent = 2);

// Parses a report produced by report_to_json.  Throws invalid_argument
// ("report-parse: ..." / "report-schema: ...") on malformed input or an
// unknown schema identifier.
RunReport report_from_json(const std::string& text);

}  // namespace tgv

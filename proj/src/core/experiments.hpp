#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/space.hpp"

namespace dilwalk {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when an experiment detects an invariant violation; the message
// names the failing invariant and the witness.
struct ExperimentFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;  // axioms|tangent|walks|compat|groupoid|drafts|distort
  std::string space = "euclidean:2";
  std::vector<double> eps_ladder;  // defaults to 2^0..2^-12
  int samples = 10'000;
  int pairs = 100;
  int steps = 1'000;
  int trajectories = 1;
  int partition_cells = 64;
  std::uint64_t seed = 0;
  std::string out;  // defaults to "<experiment>.<format>"
  std::string format = "csv";
  bool scan = true;                       // distort: run the witness scan
  std::optional<std::string> candidate;   // distort: JSON matrix file to audit
  std::optional<Point> base_point;

  // Parse a flat JSON object; unknown keys are rejected.
  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
  void validate() const;
};

struct RunManifest {
  std::string config_json;
  std::string version;
  double wall_ms = 0.0;
  std::string summary_json;  // per-experiment result summary
};

// Dispatches to the named experiment, writes the output file and a
// manifest alongside (<out>.manifest.json). Deterministic given the
// config: re-runs byte-reproduce every numeric output.
RunManifest run_experiment(const ExperimentConfig& cfg);

}  // namespace dilwalk

// Copyright 2026 The revmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario configuration, grid sweeps and result files.

#ifndef REVMET_HARNESS_HPP_
#define REVMET_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "revmet/core.hpp"

namespace revmet {

inline constexpr const char* kVersion = "1.0.0";

enum class Protocol {
  kEcho,
  kParamp,
  kSu11,
  kWva,
  kNaive,
  kHindsight,
  kAgnostic,
  kPositronium,
  kAgnosticDephasing,
  kIcoSeqVsSwitch,
  kIcoNoiseRobust,
};

std::string to_string(Protocol p);
/// Throws ConfigError on unknown ids.
Protocol parse_protocol(const std::string& id);
const std::vector<Protocol>& all_protocols();

/// Invalid configuration. `path` names the offending field, e.g.
/// "grid.alpha.count".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Axis {
  std::string name;
  std::vector<double> values;
};

struct ScenarioConfig {
  Protocol protocol = Protocol::kAgnostic;
  std::string name;
  std::vector<Axis> grid;                // Cartesian product, first axis slowest
  std::map<std::string, double> params;  // fixed values; unset ones take defaults
  std::uint64_t seed = 0;
  std::optional<long long> shots;        // empty means exact distributions
  std::string output_dir = "out";
  unsigned threads = 1;
};

/// Parses and validates a JSON scenario. `expected` pins the protocol when
/// the file omits it (and must agree when it does not).
ScenarioConfig parse_config(const std::string& json_text,
                            std::optional<Protocol> expected = std::nullopt);
/// Built-in scenario used when no config file is given.
ScenarioConfig default_config(Protocol p);

struct ParamSpec {
  std::string name;
  double fallback;  // used when neither grid nor params sets it
  double min;
  double max;
  bool integer = false;
};

/// Parameters accepted by a protocol, in record-column order.
const std::vector<ParamSpec>& protocol_parameters(Protocol p);
/// JSON schema describing the config format.
std::string config_schema();

struct PointRecord {
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::string> labels;
  RealVector distribution;
  std::optional<std::vector<long long>> counts;  // multinomial sample, when shots set
  std::optional<double> fi;
  std::optional<double> qfi;
  std::optional<double> success_prob;
  std::vector<std::pair<std::string, double>> extras;
  std::vector<std::string> warnings;
  std::string error;  // precondition violation at this point, if any
  bool invariants_ok = true;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<PointRecord> records;  // grid order
  bool all_ok() const;
};

/// Grid points run independently on config.threads workers; records come
/// back in grid order.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// One grid point. Throws PreconditionError on invalid parameters.
PointRecord run_point(Protocol p, const std::map<std::string, double>& values,
                      std::uint64_t seed);

struct OutputPaths {
  std::string records_csv;
  std::string distributions_csv;
  std::string provenance_json;
};

/// Writes <name>.csv, <name>.dist.csv and <name>.provenance.json into `dir`,
/// each through a temporary file and rename.
OutputPaths write_outputs(const ScenarioResult& result, const std::string& dir);

/// Human-readable summary table.
std::string render_table(const ScenarioResult& result);

/// Writes `contents` to `path` via a sibling temporary file and rename.
void atomic_write(const std::string& path, const std::string& contents);

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite.
std::string format_number(double x);

// --- reproduction table ---------------------------------------------------

struct VerifyRow {
  std::string claim;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "abs", "<=", ">=", "rel"
  bool pass = false;
};

/// Deterministic for a given seed (the seed only picks the random echo
/// instances).
std::vector<VerifyRow> verify_reference_numbers(std::uint64_t seed = 7);
std::string render_verify(const std::vector<VerifyRow>& rows);

}  // namespace revmet

#endif  // REVMET_HARNESS_HPP_

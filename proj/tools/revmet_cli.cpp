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

// revmet: run metrology scenarios, reproduce the reference numbers, print
// the config schema.
//
// Exit codes: 0 success, 1 an invariant re-check or verify claim failed,
// 2 invalid config or arguments.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "revmet/harness.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string shots;
  std::optional<unsigned> threads;
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw revmet::ConfigError("--config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --out beats REVMET_OUT_DIR, which beats the config file.
std::optional<std::string> resolve_out_dir(const CommonFlags& f) {
  if (!f.out_dir.empty()) return f.out_dir;
  if (const char* env = std::getenv("REVMET_OUT_DIR"); env && *env) return std::string(env);
  return std::nullopt;
}

int run_protocol(revmet::Protocol protocol, const CommonFlags& f) {
  revmet::ScenarioConfig cfg;
  try {
    cfg = f.config_path.empty() ? revmet::default_config(protocol)
                                : revmet::parse_config(read_file(f.config_path), protocol);
    if (f.seed) cfg.seed = *f.seed;
    if (f.threads) cfg.threads = *f.threads;
    if (f.shots == "exact") {
      cfg.shots.reset();
    } else if (!f.shots.empty()) {
      std::size_t used = 0;
      long long n = -1;
      try {
        n = std::stoll(f.shots, &used);
      } catch (const std::exception&) {
      }
      if (n < 1 || used != f.shots.size()) {
        throw revmet::ConfigError("--shots", "expected 'exact' or a positive integer");
      }
      cfg.shots = n;
    }
    if (auto dir = resolve_out_dir(f)) cfg.output_dir = *dir;
  } catch (const revmet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const revmet::ScenarioResult result = revmet::run_scenario(cfg);
  if (!f.quiet) std::cout << revmet::render_table(result);
  const revmet::OutputPaths paths = revmet::write_outputs(result, cfg.output_dir);
  if (!f.quiet) {
    std::cout << "wrote " << paths.records_csv << "\n      " << paths.distributions_csv
              << "\n      " << paths.provenance_json << "\n";
  }
  return result.all_ok() ? 0 : kExitFailed;
}

int run_verify(const CommonFlags& f) {
  const auto rows = revmet::verify_reference_numbers(f.seed.value_or(7));
  const std::string report = revmet::render_verify(rows);
  if (!f.quiet) std::cout << report;
  if (auto dir = resolve_out_dir(f)) {
    std::filesystem::create_directories(*dir);
    revmet::atomic_write((std::filesystem::path(*dir) / "verify_report.txt").string(), report);
  }
  for (const auto& r : rows) {
    if (!r.pass) return kExitFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revmet: time-reversal quantum metrology simulator"};
  app.require_subcommand(1);
  CommonFlags flags;

  const auto add_common = [&flags](CLI::App* sub, bool with_config) {
    if (with_config) {
      sub->add_option("--config", flags.config_path, "scenario JSON file")
          ->check(CLI::ExistingFile);
      sub->add_option("--shots", flags.shots, "'exact' or a multinomial shot count");
      sub->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
    }
    sub->add_option("--out", flags.out_dir, "output directory (overrides REVMET_OUT_DIR)");
    sub->add_option("--seed", flags.seed, "RNG seed");
    sub->add_flag("--quiet", flags.quiet, "suppress the table on stdout");
  };

  std::optional<revmet::Protocol> chosen;
  for (revmet::Protocol p : revmet::all_protocols()) {
    CLI::App* sub = app.add_subcommand(revmet::to_string(p), "run the " + revmet::to_string(p) +
                                                                  " scenario over a grid");
    add_common(sub, true);
    sub->callback([&chosen, p] { chosen = p; });
  }
  bool verify = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "reproduce the reference numbers");
  add_common(verify_cmd, false);
  verify_cmd->callback([&verify] { verify = true; });
  bool schema = false;
  app.add_subcommand("schema", "print the scenario config JSON schema")->callback([&schema] {
    schema = true;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (schema) {
    std::cout << revmet::config_schema();
    return 0;
  }
  if (verify) return run_verify(flags);
  return run_protocol(*chosen, flags);
}

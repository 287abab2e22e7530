#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scgame/market.hpp"

namespace scgame {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class OutputFormat { Csv, Json };

// One (alpha, eps, delta) study row for the NE count table, optionally with a
// published reference count to report alongside.
struct TableRowSpec {
  double alpha = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  std::optional<long> reference_count;
};

// Flat key=value configuration shared by every command. Unknown keys are
// rejected.
struct ExperimentConfig {
  MarketParams params;
  double delta = 0.8;
  std::vector<double> deltas;  // optional multi-series; empty means {delta}
  std::optional<double> q;
  std::optional<double> q_step;
  std::optional<double> q_max;
  double delta_hi = 4.0;  // starting step for the shrinking-denomination scan
  int halvings = 8;
  int samples = 0;  // ne-enumerate: random q draws for agreement checking
  std::uint64_t seed = 20240901;
  std::vector<TableRowSpec> rows;  // empty means the benchmark row set
  // Step of the q-grid the table sums over; defaults to each row's delta.
  std::optional<double> table_q_step;
  std::string out;                 // empty means stdout
  OutputFormat format = OutputFormat::Csv;
};

// The benchmark study rows with their published reference counts.
std::vector<TableRowSpec> default_table_rows();

// Applies one key=value setting; throws ConfigError on unknown keys or
// malformed values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Reads a flat key=value file ('#' starts a comment line).
void load_config_file(ExperimentConfig& cfg, const std::string& path);

// Validates the embedded market parameters; throws ConfigError.
void finalize_config(ExperimentConfig& cfg);

std::vector<double> delta_series(const ExperimentConfig& cfg);

// The config schema doubles as the JSON schema: emitted files embed the
// effective config, and a config can be rebuilt from that object.
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace scgame

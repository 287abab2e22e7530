#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scgame/config.hpp"
#include "scgame/equilibria.hpp"
#include "scgame/stackelberg.hpp"

namespace scgame {

// Exit codes: 0 success (and oracle/closed-form agreement where checked),
// 1 disagreement, 2 config error (thrown as ConfigError).
struct CommandOutput {
  int exit_code = 0;
  std::string body;
};

CommandOutput cmd_validate(const ExperimentConfig& cfg);
CommandOutput cmd_ne_enumerate(const ExperimentConfig& cfg);
CommandOutput cmd_ne_count_table(const ExperimentConfig& cfg);
CommandOutput cmd_ne_vs_q(const ExperimentConfig& cfg);
CommandOutput cmd_supplier_sweep(const ExperimentConfig& cfg);
CommandOutput cmd_min_delta(const ExperimentConfig& cfg);

void write_output(const ExperimentConfig& cfg, const std::string& body);

const char* regime_name(RegimeLabel label);

// --- building blocks the commands and the test suites share ---

struct NeVsQRow {
  double q = 0.0;
  RegimeLabel regime = RegimeLabel::Duopoly;
  std::vector<long> symmetric;
};

struct NeVsQSeries {
  double delta = 0.0;
  std::vector<NeVsQRow> rows;
  // q values where the symmetric count increased over the previous row. The
  // count shrinks in trend but saw-tooths locally whenever a grid multiple
  // enters the moving price interval through an endpoint.
  std::vector<double> violation_qs;
  // Increases whose new prices are NOT explained by an interval endpoint
  // crossing between the two samples; these are genuine trend anomalies.
  std::vector<double> unexplained_qs;
};

NeVsQSeries ne_vs_q_series(const MarketParams& p, double delta, QGridSpec q_grid);

// Counting protocol for the NE table: ordered operating profiles summed over
// an arithmetic q-grid from 0 up to the monopoly choke price. The step is the
// row's delta unless the config overrides it. Shutdown and one-sided
// equilibria are not counted.
std::string table_protocol_descriptor(std::optional<double> q_step);
long ne_count_for_row(const MarketParams& base, const TableRowSpec& row,
                      std::optional<double> q_step);

}  // namespace scgame

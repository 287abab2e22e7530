#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scgame/experiments.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<double> q, delta, q_step, q_max;
  std::optional<std::uint64_t> seed;
  std::string out, format;
};

scgame::ExperimentConfig build_config(const CliOverrides& cli) {
  scgame::ExperimentConfig cfg;
  if (!cli.config_path.empty()) scgame::load_config_file(cfg, cli.config_path);
  for (const auto& pair : cli.sets) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos)
      throw scgame::ConfigError("--set expects key=value, got: " + pair);
    scgame::apply_setting(cfg, pair.substr(0, eq), pair.substr(eq + 1));
  }
  if (cli.q) cfg.q = *cli.q;
  if (cli.delta) cfg.delta = *cli.delta;
  if (cli.q_step) cfg.q_step = *cli.q_step;
  if (cli.q_max) cfg.q_max = *cli.q_max;
  if (cli.seed) cfg.seed = *cli.seed;
  if (!cli.out.empty()) cfg.out = cli.out;
  if (!cli.format.empty()) scgame::apply_setting(cfg, "format", cli.format);
  scgame::finalize_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-price supply-chain duopoly: equilibrium enumeration and "
               "supplier price optimization"};
  app.require_subcommand(1);

  CliOverrides cli;
  app.add_option("--config", cli.config_path, "flat key=value config file");
  app.add_option("--set", cli.sets, "override a config key (key=value, repeatable)");
  app.add_option("--out", cli.out, "output path (default stdout)");
  app.add_option("--format", cli.format, "csv or json");
  app.add_option("--q", cli.q, "supplier price");
  app.add_option("--delta", cli.delta, "price denomination step");
  app.add_option("--q-step", cli.q_step, "supplier price sweep step");
  app.add_option("--q-max", cli.q_max, "supplier price sweep bound");
  app.add_option("--seed", cli.seed, "seed for randomized oracle-agreement sampling");

  using Command = scgame::CommandOutput (*)(const scgame::ExperimentConfig&);
  struct Sub {
    const char* name;
    const char* help;
    Command run;
  };
  const Sub subs[] = {
      {"validate", "check parameters and print derived thresholds", scgame::cmd_validate},
      {"ne-enumerate", "closed-form vs brute-force equilibria at a fixed supplier price",
       scgame::cmd_ne_enumerate},
      {"ne-count-table", "equilibrium counts across (alpha, eps, delta) study rows",
       scgame::cmd_ne_count_table},
      {"ne-vs-q", "symmetric equilibrium prices as the supplier price grows",
       scgame::cmd_ne_vs_q},
      {"supplier-sweep", "focal equilibrium and supplier utility over a price sweep",
       scgame::cmd_supplier_sweep},
      {"min-delta", "halve the denomination until operating equilibria disappear",
       scgame::cmd_min_delta},
  };

  Command selected = nullptr;
  for (const auto& sub : subs) {
    CLI::App* s = app.add_subcommand(sub.name, sub.help);
    s->fallthrough();
    s->callback([&selected, run = sub.run] { selected = run; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const scgame::ExperimentConfig cfg = build_config(cli);
    const scgame::CommandOutput result = selected(cfg);
    scgame::write_output(cfg, result.body);
    return result.exit_code;
  } catch (const scgame::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

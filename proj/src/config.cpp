#include "scgame/config.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace scgame {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + value);
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const long x = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + value);
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_delta_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& part : split(value, ',')) {
    const std::string t = trim(part);
    if (t.empty()) continue;
    out.push_back(parse_double(key, t));
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'");
  return out;
}

// rows syntax: "alpha,eps,delta[,reference];..." per row.
std::vector<TableRowSpec> parse_rows(const std::string& value) {
  std::vector<TableRowSpec> rows;
  for (const auto& row_text : split(value, ';')) {
    const std::string t = trim(row_text);
    if (t.empty()) continue;
    const auto fields = split(t, ',');
    if (fields.size() != 3 && fields.size() != 4)
      throw ConfigError("rows entries need alpha,eps,delta[,reference]: " + t);
    TableRowSpec row;
    row.alpha = parse_double("rows", trim(fields[0]));
    row.eps = parse_double("rows", trim(fields[1]));
    row.delta = parse_double("rows", trim(fields[2]));
    if (fields.size() == 4) row.reference_count = parse_long("rows", trim(fields[3]));
    rows.push_back(row);
  }
  if (rows.empty()) throw ConfigError("rows is empty");
  return rows;
}

std::string rows_to_string(const std::vector<TableRowSpec>& rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i) out << ';';
    out << rows[i].alpha << ',' << rows[i].eps << ',' << rows[i].delta;
    if (rows[i].reference_count) out << ',' << *rows[i].reference_count;
  }
  return out.str();
}

std::string deltas_to_string(const std::vector<double>& deltas) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (size_t i = 0; i < deltas.size(); ++i) {
    if (i) out << ',';
    out << deltas[i];
  }
  return out.str();
}

}  // namespace

std::vector<TableRowSpec> default_table_rows() {
  return {
      {2.0, 0.9, 4.0, 49},  {2.0, 0.9, 0.4, 32},  {2.0, 0.54, 4.0, 6},
      {2.0, 0.54, 0.4, 12}, {0.2, 0.9, 4.0, 557}, {0.2, 0.9, 0.4, 262},
      {0.2, 0.54, 4.0, 142}, {0.2, 0.54, 0.4, 31},
  };
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "d_bar") cfg.params.d_bar = parse_double(key, value);
  else if (key == "alpha") cfg.params.alpha = parse_double(key, value);
  else if (key == "eps") cfg.params.eps = parse_double(key, value);
  else if (key == "omega") cfg.params.omega = parse_double(key, value);
  else if (key == "h") cfg.params.h = parse_double(key, value);
  else if (key == "c_m") cfg.params.c_m = parse_double(key, value);
  else if (key == "o_m") cfg.params.o_m = parse_double(key, value);
  else if (key == "c_s") cfg.params.c_s = parse_double(key, value);
  else if (key == "o_s") cfg.params.o_s = parse_double(key, value);
  else if (key == "delta") cfg.delta = parse_double(key, value);
  else if (key == "deltas") cfg.deltas = parse_delta_list(key, value);
  else if (key == "q") cfg.q = parse_double(key, value);
  else if (key == "q_step") cfg.q_step = parse_double(key, value);
  else if (key == "q_max") cfg.q_max = parse_double(key, value);
  else if (key == "delta_hi") cfg.delta_hi = parse_double(key, value);
  else if (key == "halvings") cfg.halvings = static_cast<int>(parse_long(key, value));
  else if (key == "samples") cfg.samples = static_cast<int>(parse_long(key, value));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
  else if (key == "rows") cfg.rows = parse_rows(value);
  else if (key == "table_q_step") cfg.table_q_step = parse_double(key, value);
  else if (key == "out") cfg.out = value;
  else if (key == "format") {
    if (value == "csv") cfg.format = OutputFormat::Csv;
    else if (value == "json") cfg.format = OutputFormat::Json;
    else throw ConfigError("format must be csv or json, got: " + value);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    apply_setting(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
}

void finalize_config(ExperimentConfig& cfg) {
  try {
    cfg.params = validate_params(cfg.params);
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("invalid market parameters: ") + e.what());
  }
  if (!(cfg.delta > 0.0)) throw ConfigError("delta must be > 0");
  for (double d : cfg.deltas)
    if (!(d > 0.0)) throw ConfigError("deltas entries must be > 0");
  if (cfg.q && *cfg.q < 0.0) throw ConfigError("q must be >= 0");
  if (cfg.q_step && !(*cfg.q_step > 0.0)) throw ConfigError("q_step must be > 0");
  if (!(cfg.delta_hi > 0.0)) throw ConfigError("delta_hi must be > 0");
  if (cfg.halvings < 0) throw ConfigError("halvings must be >= 0");
  if (cfg.samples < 0) throw ConfigError("samples must be >= 0");
  if (cfg.table_q_step && !(*cfg.table_q_step > 0.0))
    throw ConfigError("table_q_step must be > 0");
}

std::vector<double> delta_series(const ExperimentConfig& cfg) {
  return cfg.deltas.empty() ? std::vector<double>{cfg.delta} : cfg.deltas;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["d_bar"] = cfg.params.d_bar;
  j["alpha"] = cfg.params.alpha;
  j["eps"] = cfg.params.eps;
  j["omega"] = cfg.params.omega;
  j["h"] = cfg.params.h;
  j["c_m"] = cfg.params.c_m;
  j["o_m"] = cfg.params.o_m;
  j["c_s"] = cfg.params.c_s;
  j["o_s"] = cfg.params.o_s;
  j["delta"] = cfg.delta;
  if (!cfg.deltas.empty()) j["deltas"] = deltas_to_string(cfg.deltas);
  if (cfg.q) j["q"] = *cfg.q;
  if (cfg.q_step) j["q_step"] = *cfg.q_step;
  if (cfg.q_max) j["q_max"] = *cfg.q_max;
  j["delta_hi"] = cfg.delta_hi;
  j["halvings"] = cfg.halvings;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  if (!cfg.rows.empty()) j["rows"] = rows_to_string(cfg.rows);
  if (cfg.table_q_step) j["table_q_step"] = *cfg.table_q_step;
  if (!cfg.out.empty()) j["out"] = cfg.out;
  j["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    std::string text;
    if (value.is_string()) text = value.get<std::string>();
    else text = value.dump();
    apply_setting(cfg, key, text);
  }
  return cfg;
}

}  // namespace scgame

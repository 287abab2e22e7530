#include "scgame/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "scgame/numeric.hpp"

namespace scgame {

namespace {

std::string join_prices(const std::vector<long>& indices, const PriceGrid& grid) {
  std::string out;
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ';';
    out += fmt9(grid.price(indices[i]));
  }
  return out;
}

double require_q(const ExperimentConfig& cfg) {
  if (!cfg.q) throw ConfigError("this command needs a supplier price: set q");
  return *cfg.q;
}

QGridSpec q_grid_for(const ExperimentConfig& cfg, const MarketParams& p, const PriceGrid& grid) {
  QGridSpec spec = QGridSpec::defaults(p, grid);
  if (cfg.q_step) spec.q_step = *cfg.q_step;
  if (cfg.q_max) spec.q_max = *cfg.q_max;
  return spec;
}

// Platform-stable uniform draw in [0, 1).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

nlohmann::json json_envelope(const char* schema, const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["schema"] = schema;
  j["config"] = config_to_json(cfg);
  return j;
}

nlohmann::json equilibrium_set_json(const EquilibriumSet& set, const PriceGrid& grid) {
  nlohmann::json j;
  j["regime"] = regime_name(set.regime);
  j["shutdown"] = set.shutdown_ne;
  j["symmetric"] = nlohmann::json::array();
  for (long l : set.symmetric) j["symmetric"].push_back(grid.price(l));
  j["asymmetric"] = nlohmann::json::array();
  for (const auto& [a, b] : set.asymmetric)
    j["asymmetric"].push_back({grid.price(a), grid.price(b)});
  j["one_sided"] = nlohmann::json::array();
  for (long l : set.one_sided) j["one_sided"].push_back(grid.price(l));
  return j;
}

void emit_set_rows(std::ostringstream& csv, const char* section, const EquilibriumSet& set,
                   const PriceGrid& grid) {
  for (long l : set.symmetric)
    csv << section << ",symmetric," << fmt9(grid.price(l)) << ',' << fmt9(grid.price(l)) << "\n";
  for (const auto& [a, b] : set.asymmetric)
    csv << section << ",asymmetric," << fmt9(grid.price(a)) << ',' << fmt9(grid.price(b)) << "\n";
  for (long l : set.one_sided)
    csv << section << ",one_sided," << fmt9(grid.price(l)) << ",no\n";
  if (set.shutdown_ne) csv << section << ",shutdown,no,no\n";
}

CommandOutput ne_enumerate_fixed_q(const ExperimentConfig& cfg) {
  const double q = require_q(cfg);
  const PriceGrid grid = PriceGrid::covering(cfg.params, cfg.delta);
  const ClosedFormEquilibria closed = closed_form_equilibria(cfg.params, q, grid);
  const EquilibriumSet oracle = brute_force_nash(cfg.params, q, grid);
  const NeComparison diff = compare_equilibria(cfg.params, q, grid, closed, oracle);

  // Best responses are expected inside the small candidate set; this can
  // fail where demand clamps bind, so it is logged rather than enforced.
  std::vector<long> candidate_violations(static_cast<size_t>(grid.max_index + 1), 0);
  parallel_for(0, grid.max_index + 1, [&](long l) {
    const BestResponse br = best_response(cfg.params, q, grid, Action::price(l));
    if (br.within_candidate_set && !*br.within_candidate_set)
      candidate_violations[static_cast<size_t>(l)] = 1;
  });
  long violation_count = 0;
  for (long v : candidate_violations) violation_count += v;

  CommandOutput out;
  out.exit_code = diff.agrees() ? 0 : 1;

  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j = json_envelope("ne-enumerate v1", cfg);
    j["q"] = q;
    j["regime"] = regime_name(oracle.regime);
    j["agree"] = diff.agrees();
    j["br_candidate_violations"] = violation_count;
    j["closed_form"] = equilibrium_set_json(closed.set, grid);
    j["oracle"] = equilibrium_set_json(oracle, grid);
    if (closed.interval) {
      j["interval"] = {{"s", closed.interval->s},
                       {"e", closed.interval->e},
                       {"tilde_e", closed.interval->tilde_e},
                       {"nonempty", closed.interval->nonempty}};
    }
    const auto price_pairs = [&](const std::vector<std::pair<long, long>>& v) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [a, b] : v) arr.push_back({grid.price(a), grid.price(b)});
      return arr;
    };
    const auto prices_of = [&](const std::vector<long>& v) {
      nlohmann::json arr = nlohmann::json::array();
      for (long l : v) arr.push_back(grid.price(l));
      return arr;
    };
    nlohmann::json d;
    d["closed_only_symmetric"] = prices_of(diff.closed_only_symmetric);
    d["oracle_only_symmetric"] = prices_of(diff.oracle_only_symmetric);
    d["boundary_symmetric"] = prices_of(diff.boundary_symmetric);
    d["closed_only_asymmetric"] = price_pairs(diff.closed_only_asymmetric);
    d["oracle_only_asymmetric"] = price_pairs(diff.oracle_only_asymmetric);
    d["boundary_asymmetric"] = price_pairs(diff.boundary_asymmetric);
    d["shutdown_mismatch"] = diff.shutdown_mismatch;
    j["diff"] = d;
    out.body = j.dump(2) + "\n";
    return out;
  }

  std::ostringstream csv;
  csv << "# scgame ne-enumerate v1\n";
  csv << "# q=" << fmt9(q) << " delta=" << fmt9(grid.delta)
      << " regime=" << regime_name(oracle.regime) << " agree=" << (diff.agrees() ? 1 : 0)
      << " br_candidate_violations=" << violation_count << "\n";
  if (closed.interval) {
    csv << "# interval s=" << fmt9(closed.interval->s) << " e=" << fmt9(closed.interval->e)
        << " tilde_e=" << fmt9(closed.interval->tilde_e) << "\n";
  }
  csv << "section,kind,price_i,price_j\n";
  emit_set_rows(csv, "closed_form", closed.set, grid);
  emit_set_rows(csv, "oracle", oracle, grid);
  for (long l : diff.closed_only_symmetric)
    csv << "diff,closed_only_symmetric," << fmt9(grid.price(l)) << ',' << fmt9(grid.price(l))
        << "\n";
  for (long l : diff.oracle_only_symmetric)
    csv << "diff,oracle_only_symmetric," << fmt9(grid.price(l)) << ',' << fmt9(grid.price(l))
        << "\n";
  for (long l : diff.boundary_symmetric)
    csv << "diff,boundary_symmetric," << fmt9(grid.price(l)) << ',' << fmt9(grid.price(l))
        << "\n";
  for (const auto& [a, b] : diff.closed_only_asymmetric)
    csv << "diff,closed_only_asymmetric," << fmt9(grid.price(a)) << ',' << fmt9(grid.price(b))
        << "\n";
  for (const auto& [a, b] : diff.oracle_only_asymmetric)
    csv << "diff,oracle_only_asymmetric," << fmt9(grid.price(a)) << ',' << fmt9(grid.price(b))
        << "\n";
  for (const auto& [a, b] : diff.boundary_asymmetric)
    csv << "diff,boundary_asymmetric," << fmt9(grid.price(a)) << ',' << fmt9(grid.price(b))
        << "\n";
  if (diff.shutdown_mismatch) csv << "diff,shutdown_mismatch,,\n";
  out.body = csv.str();
  return out;
}

CommandOutput ne_enumerate_sampled(const ExperimentConfig& cfg) {
  const PriceGrid grid = PriceGrid::covering(cfg.params, cfg.delta);
  const double q_top = monopoly_choke_price(cfg.params) + grid.delta;
  std::mt19937_64 rng(cfg.seed);

  struct SampleRow {
    double q = 0.0;
    bool agree = false;
    size_t closed_sym = 0, oracle_sym = 0, boundary = 0;
    size_t closed_asym = 0, oracle_asym = 0;
  };
  std::vector<SampleRow> rows(static_cast<size_t>(cfg.samples));
  std::vector<double> qs(rows.size());
  for (auto& q : qs) q = uniform01(rng) * q_top;  // draws stay schedule-independent

  parallel_for(0, static_cast<long>(rows.size()), [&](long i) {
    const double q = qs[static_cast<size_t>(i)];
    const ClosedFormEquilibria closed = closed_form_equilibria(cfg.params, q, grid);
    const EquilibriumSet oracle = brute_force_nash(cfg.params, q, grid);
    const NeComparison diff = compare_equilibria(cfg.params, q, grid, closed, oracle);
    SampleRow row;
    row.q = q;
    row.agree = diff.agrees();
    row.closed_sym = closed.set.symmetric.size();
    row.oracle_sym = oracle.symmetric.size();
    row.boundary = diff.boundary_symmetric.size();
    row.closed_asym = closed.set.asymmetric.size();
    row.oracle_asym = oracle.asymmetric.size();
    rows[static_cast<size_t>(i)] = row;
  });

  bool all_agree = true;
  for (const auto& row : rows) all_agree = all_agree && row.agree;

  CommandOutput out;
  out.exit_code = all_agree ? 0 : 1;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j = json_envelope("ne-enumerate-samples v1", cfg);
    j["agree"] = all_agree;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
      j["rows"].push_back({{"q", row.q},
                           {"agree", row.agree},
                           {"closed_symmetric", row.closed_sym},
                           {"oracle_symmetric", row.oracle_sym},
                           {"boundary", row.boundary},
                           {"closed_asymmetric", row.closed_asym},
                           {"oracle_asymmetric", row.oracle_asym}});
    }
    out.body = j.dump(2) + "\n";
    return out;
  }
  std::ostringstream csv;
  csv << "# scgame ne-enumerate-samples v1\n";
  csv << "# delta=" << fmt9(grid.delta) << " samples=" << cfg.samples << " seed=" << cfg.seed
      << " agree=" << (all_agree ? 1 : 0) << "\n";
  csv << "sample,q,agree,closed_symmetric,oracle_symmetric,boundary,closed_asymmetric,"
         "oracle_asymmetric\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    csv << i << ',' << fmt9(row.q) << ',' << (row.agree ? 1 : 0) << ',' << row.closed_sym << ','
        << row.oracle_sym << ',' << row.boundary << ',' << row.closed_asym << ','
        << row.oracle_asym << "\n";
  }
  out.body = csv.str();
  return out;
}

}  // namespace

const char* regime_name(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::CompleteChoking: return "complete_choking";
    case RegimeLabel::PartialChoking: return "partial_choking";
    case RegimeLabel::Duopoly: return "duopoly";
  }
  return "?";
}

void write_output(const ExperimentConfig& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + cfg.out);
  out << body;
}

CommandOutput cmd_validate(const ExperimentConfig& cfg) {
  const MarketParams p = cfg.params;  // already validated by finalize_config
  CommandOutput out;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j = json_envelope("validate v1", cfg);
    j["a1_margin"] = p.a1_margin();
    j["monopoly_choke_price"] = monopoly_choke_price(p);
    j["matched_choke_price"] = matched_choke_price(p);
    out.body = j.dump(2) + "\n";
    return out;
  }
  std::ostringstream csv;
  csv << "# scgame validate v1\n";
  csv << "key,value\n";
  csv << "d_bar," << fmt9(p.d_bar) << "\n";
  csv << "alpha," << fmt9(p.alpha) << "\n";
  csv << "eps," << fmt9(p.eps) << "\n";
  csv << "omega," << fmt9(p.omega) << "\n";
  csv << "h," << fmt9(p.h) << "\n";
  csv << "c_m," << fmt9(p.c_m) << "\n";
  csv << "o_m," << fmt9(p.o_m) << "\n";
  csv << "c_s," << fmt9(p.c_s) << "\n";
  csv << "o_s," << fmt9(p.o_s) << "\n";
  csv << "a1_margin," << fmt9(p.a1_margin()) << "\n";
  csv << "monopoly_choke_price," << fmt9(monopoly_choke_price(p)) << "\n";
  csv << "matched_choke_price," << fmt9(matched_choke_price(p)) << "\n";
  out.body = csv.str();
  return out;
}

CommandOutput cmd_ne_enumerate(const ExperimentConfig& cfg) {
  return cfg.samples > 0 ? ne_enumerate_sampled(cfg) : ne_enumerate_fixed_q(cfg);
}

std::string table_protocol_descriptor(std::optional<double> q_step) {
  std::string step = q_step ? fmt9(*q_step) : std::string("delta");
  return "ordered-operating-profiles|q=0:" + step + ":monopoly_choke";
}

long ne_count_for_row(const MarketParams& base, const TableRowSpec& row,
                      std::optional<double> q_step) {
  MarketParams p = base;
  p.alpha = row.alpha;
  p.eps = row.eps;
  p = validate_params(p);
  const PriceGrid grid = PriceGrid::covering(p, row.delta);
  const double step = q_step.value_or(row.delta);
  const double q_top = monopoly_choke_price(p);
  const long n_q = static_cast<long>(std::floor(q_top / step + 1e-9)) + 1;
  std::vector<long> counts(static_cast<size_t>(n_q), 0);
  parallel_for(0, n_q, [&](long k) {
    const double q = static_cast<double>(k) * step;
    counts[static_cast<size_t>(k)] = brute_force_nash(p, q, grid).operating_count();
  });
  long total = 0;
  for (long c : counts) total += c;
  return total;
}

CommandOutput cmd_ne_count_table(const ExperimentConfig& cfg) {
  const std::vector<TableRowSpec> rows = cfg.rows.empty() ? default_table_rows() : cfg.rows;
  std::vector<long> counts(rows.size(), 0);
  for (size_t i = 0; i < rows.size(); ++i)
    counts[i] = ne_count_for_row(cfg.params, rows[i], cfg.table_q_step);
  const std::string protocol = table_protocol_descriptor(cfg.table_q_step);

  CommandOutput out;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j = json_envelope("ne-count-table v1", cfg);
    j["protocol"] = protocol;
    j["rows"] = nlohmann::json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      nlohmann::json r = {{"alpha", rows[i].alpha},
                          {"eps", rows[i].eps},
                          {"delta", rows[i].delta},
                          {"ne_count", counts[i]}};
      if (rows[i].reference_count) r["reference_count"] = *rows[i].reference_count;
      j["rows"].push_back(r);
    }
    out.body = j.dump(2) + "\n";
    return out;
  }
  std::ostringstream csv;
  csv << "# scgame ne-count-table v1\n";
  csv << "# protocol=" << protocol << "\n";
  csv << "alpha,eps,delta,q_protocol,ne_count,reference_count\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    csv << fmt9(rows[i].alpha) << ',' << fmt9(rows[i].eps) << ',' << fmt9(rows[i].delta) << ','
        << protocol << ',' << counts[i] << ',';
    if (rows[i].reference_count) csv << *rows[i].reference_count;
    csv << "\n";
  }
  out.body = csv.str();
  return out;
}

NeVsQSeries ne_vs_q_series(const MarketParams& p, double delta, QGridSpec q_grid) {
  NeVsQSeries series;
  series.delta = delta;
  const PriceGrid grid = PriceGrid::covering(p, delta);
  const long steps = static_cast<long>(std::floor(q_grid.q_max / q_grid.q_step + 1e-9));
  if (steps < 1) return series;
  series.rows.resize(static_cast<size_t>(steps));
  std::vector<std::optional<SymmetricNeInterval>> intervals(static_cast<size_t>(steps));
  parallel_for(1, steps + 1, [&](long k) {
    const double q = static_cast<double>(k) * q_grid.q_step;
    NeVsQRow row;
    row.q = q;
    row.regime = classify_regime(p, q, grid);
    row.symmetric = brute_force_nash(p, q, grid).symmetric;
    series.rows[static_cast<size_t>(k - 1)] = row;
    try {
      intervals[static_cast<size_t>(k - 1)] = symmetric_ne_interval(p, q, grid);
    } catch (const HypothesisViolated&) {
    }
  });

  // A count increase is expected exactly when a grid multiple crosses into
  // the interval through a moving endpoint between the two samples.
  const auto endpoint_crossed = [&](double price, double prev, double cur) {
    const double fuzz = 1e-9 * std::max({1.0, std::fabs(prev), std::fabs(cur)});
    return price >= std::min(prev, cur) - fuzz && price <= std::max(prev, cur) + fuzz;
  };
  for (size_t i = 1; i < series.rows.size(); ++i) {
    if (series.rows[i].symmetric.size() <= series.rows[i - 1].symmetric.size()) continue;
    series.violation_qs.push_back(series.rows[i].q);
    bool explained = intervals[i - 1].has_value() && intervals[i].has_value();
    if (explained) {
      std::vector<long> entered;
      std::set_difference(series.rows[i].symmetric.begin(), series.rows[i].symmetric.end(),
                          series.rows[i - 1].symmetric.begin(),
                          series.rows[i - 1].symmetric.end(), std::back_inserter(entered));
      for (long l : entered) {
        const double price = grid.price(l);
        if (!endpoint_crossed(price, intervals[i - 1]->e, intervals[i]->e) &&
            !endpoint_crossed(price, intervals[i - 1]->s, intervals[i]->s)) {
          explained = false;
          break;
        }
      }
    }
    if (!explained) series.unexplained_qs.push_back(series.rows[i].q);
  }
  return series;
}

CommandOutput cmd_ne_vs_q(const ExperimentConfig& cfg) {
  std::vector<NeVsQSeries> all;
  for (double delta : delta_series(cfg)) {
    const PriceGrid grid = PriceGrid::covering(cfg.params, delta);
    all.push_back(ne_vs_q_series(cfg.params, delta, q_grid_for(cfg, cfg.params, grid)));
  }

  CommandOutput out;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j = json_envelope("ne-vs-q v1", cfg);
    j["series"] = nlohmann::json::array();
    for (const auto& series : all) {
      const PriceGrid grid = PriceGrid::covering(cfg.params, series.delta);
      nlohmann::json s;
      s["delta"] = series.delta;
      s["trend_violation_qs"] = series.violation_qs;
      s["trend_unexplained_qs"] = series.unexplained_qs;
      s["rows"] = nlohmann::json::array();
      for (const auto& row : series.rows) {
        nlohmann::json prices = nlohmann::json::array();
        for (long l : row.symmetric) prices.push_back(grid.price(l));
        s["rows"].push_back({{"q", row.q},
                             {"regime", regime_name(row.regime)},
                             {"ne_count", row.symmetric.size()},
                             {"prices", prices}});
      }
      j["series"].push_back(s);
    }
    out.body = j.dump(2) + "\n";
    return out;
  }
  const auto join_qs = [](const std::vector<double>& qs) {
    std::string out;
    for (size_t i = 0; i < qs.size(); ++i) {
      if (i) out += ';';
      out += fmt9(qs[i]);
    }
    return out;
  };
  std::ostringstream csv;
  csv << "# scgame ne-vs-q v1\n";
  for (const auto& series : all) {
    csv << "# trend delta=" << fmt9(series.delta)
        << " increases=" << series.violation_qs.size()
        << " unexplained=" << series.unexplained_qs.size();
    if (!series.violation_qs.empty()) csv << " at=" << join_qs(series.violation_qs);
    if (!series.unexplained_qs.empty())
      csv << " unexplained_at=" << join_qs(series.unexplained_qs);
    csv << "\n";
  }
  csv << "delta,q,regime,ne_count,prices\n";
  for (const auto& series : all) {
    const PriceGrid grid = PriceGrid::covering(cfg.params, series.delta);
    for (const auto& row : series.rows) {
      csv << fmt9(series.delta) << ',' << fmt9(row.q) << ',' << regime_name(row.regime) << ','
          << row.symmetric.size() << ',' << join_prices(row.symmetric, grid) << "\n";
    }
  }
  out.body = csv.str();
  return out;
}

CommandOutput cmd_supplier_sweep(const ExperimentConfig& cfg) {
  struct Series {
    double delta = 0.0;
    SupplierSweep sweep;
    bool has_best = false;
    OptimalSupplierPrice best;
  };
  std::vector<Series> all;
  for (double delta : delta_series(cfg)) {
    const PriceGrid grid = PriceGrid::covering(cfg.params, delta);
    Series series;
    series.delta = delta;
    series.sweep = supplier_sweep(cfg.params, grid, q_grid_for(cfg, cfg.params, grid));
    try {
      series.best = optimal_supplier_price(series.sweep.rows);
      series.has_best = true;
    } catch (const NoFeasibleQ&) {
      series.has_best = false;
    }
    all.push_back(std::move(series));
  }

  CommandOutput out;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j = json_envelope("supplier-sweep v1", cfg);
    j["series"] = nlohmann::json::array();
    for (const auto& series : all) {
      nlohmann::json s;
      s["delta"] = series.delta;
      if (series.sweep.partial_choking_q) s["partial_choking_q"] = *series.sweep.partial_choking_q;
      if (series.has_best) s["argmax"] = {{"q", series.best.q}, {"u_s", series.best.u_s}};
      s["rows"] = nlohmann::json::array();
      for (const auto& row : series.sweep.rows) {
        nlohmann::json r = {{"q", row.q},
                            {"regime", regime_name(row.regime)},
                            {"focal_exists", row.focal.exists}};
        if (row.focal.exists) {
          r["focal_price"] = row.focal.price;
          r["u_m"] = row.u_m;
          r["u_s"] = row.u_s;
        }
        if (series.sweep.partial_choking_q)
          r["past_partial_choking"] = row.q >= *series.sweep.partial_choking_q;
        s["rows"].push_back(r);
      }
      j["series"].push_back(s);
    }
    out.body = j.dump(2) + "\n";
    return out;
  }

  std::ostringstream csv;
  csv << "# scgame supplier-sweep v1\n";
  for (const auto& series : all) {
    csv << "# series delta=" << fmt9(series.delta);
    if (series.sweep.partial_choking_q)
      csv << " partial_choking_q=" << fmt9(*series.sweep.partial_choking_q);
    if (series.has_best)
      csv << " argmax_q=" << fmt9(series.best.q) << " argmax_u_s=" << fmt9(series.best.u_s);
    csv << "\n";
  }
  csv << "delta,q,regime,focal_exists,focal_price,u_m,u_s,past_partial_choking\n";
  for (const auto& series : all) {
    for (const auto& row : series.sweep.rows) {
      csv << fmt9(series.delta) << ',' << fmt9(row.q) << ',' << regime_name(row.regime) << ','
          << (row.focal.exists ? 1 : 0) << ',';
      if (row.focal.exists)
        csv << fmt9(row.focal.price) << ',' << fmt9(row.u_m) << ',' << fmt9(row.u_s);
      else
        csv << ",,";
      csv << ',';
      if (series.sweep.partial_choking_q)
        csv << (row.q >= *series.sweep.partial_choking_q ? 1 : 0);
      csv << "\n";
    }
  }
  out.body = csv.str();
  return out;
}

CommandOutput cmd_min_delta(const ExperimentConfig& cfg) {
  const double q = require_q(cfg);
  const MinDeltaReport report = min_delta_no_ne(cfg.params, q, cfg.delta_hi, cfg.halvings);

  CommandOutput out;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j = json_envelope("min-delta v1", cfg);
    j["q"] = q;
    if (report.largest_no_ne_delta) j["largest_no_ne_delta"] = *report.largest_no_ne_delta;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.trace) {
      j["rows"].push_back({{"delta", row.delta},
                           {"symmetric", row.symmetric},
                           {"asymmetric", row.asymmetric},
                           {"one_sided", row.one_sided},
                           {"operating", row.operating}});
    }
    out.body = j.dump(2) + "\n";
    return out;
  }
  std::ostringstream csv;
  csv << "# scgame min-delta v1\n";
  csv << "# q=" << fmt9(q);
  if (report.largest_no_ne_delta)
    csv << " largest_no_ne_delta=" << fmt9(*report.largest_no_ne_delta);
  csv << "\n";
  csv << "delta,symmetric,asymmetric,one_sided,operating\n";
  for (const auto& row : report.trace) {
    csv << fmt9(row.delta) << ',' << row.symmetric << ',' << row.asymmetric << ','
        << row.one_sided << ',' << row.operating << "\n";
  }
  out.body = csv.str();
  return out;
}

}  // namespace scgame

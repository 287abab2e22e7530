#include "scgame/equilibria.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "scgame/numeric.hpp"

namespace scgame {

namespace {

// Utility of playing grid index `own` against `opp`; -1 means NoOperate.
inline double play(const MarketParams& p, const PriceGrid& grid, double q, long own, long opp) {
  if (own < 0) return 0.0;
  const double own_price = grid.price(own);
  if (opp < 0) return monopoly_utility(p, q, own_price);
  if (own < opp) return low_price_utility(p, q, own_price, grid.price(opp));
  if (own > opp) return high_price_utility(p, q, own_price);
  return matched_price_utility(p, q, own_price);
}

// Action slots enumerate {NoOperate} followed by the grid: slot k <-> index k-1.
void fill_response_row(const MarketParams& p, const PriceGrid& grid, double q, long opp,
                       std::vector<double>& row) {
  const long n = grid.max_index + 2;
  row.resize(static_cast<size_t>(n));
  for (long s = 0; s < n; ++s) row[static_cast<size_t>(s)] = play(p, grid, q, s - 1, opp);
}

// Tie-inclusive argmax over a response row, returned as ascending action
// indices (NoOperate first as -1).
std::vector<long> collect_best(const std::vector<double>& row) {
  double best = row[0];
  for (double v : row) best = std::max(best, v);
  std::vector<long> out;
  for (long s = 0; s < static_cast<long>(row.size()); ++s)
    if (near_ge(row[static_cast<size_t>(s)], best)) out.push_back(s - 1);
  return out;
}

bool contains_index(const std::vector<long>& sorted, long value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

struct GapCoeffs {
  double lambda_e = 0.0;
  double rho_e = 0.0;
};

GapCoeffs gap_coeffs(const MarketParams& p, double q, double delta) {
  const double c = p.effective_cost(q);
  GapCoeffs g;
  g.lambda_e = p.alpha * c * p.eps + p.alpha * delta * (3.0 * p.eps - 2.0);
  g.rho_e = delta * p.alpha * (1.0 - p.eps) * (c + delta) + p.d_bar * delta;
  return g;
}

// Positive root of -x^2*alpha*eps + x*lambda_e + rho_e, written so the
// eps -> 0 limit degrades to the linear root without cancellation.
double undercut_gap_root(const MarketParams& p, const GapCoeffs& g) {
  const double curvature = p.alpha * p.eps;
  const double disc = g.lambda_e * g.lambda_e + 4.0 * curvature * g.rho_e;
  return 2.0 * g.rho_e / (std::sqrt(disc) - g.lambda_e);
}

}  // namespace

RegimeLabel classify_regime(const MarketParams& p, double q, const PriceGrid& grid) {
  if (monopoly_grid_optimum(p, q, grid).value < 0.0) return RegimeLabel::CompleteChoking;
  return high_price_optimum(p, q, grid).value >= 0.0 ? RegimeLabel::Duopoly
                                                     : RegimeLabel::PartialChoking;
}

BestResponse best_response(const MarketParams& p, double q, const PriceGrid& grid,
                           Action opponent) {
  std::vector<double> row;
  fill_response_row(p, grid, q, opponent.operates() ? opponent.index() : -1, row);
  const auto best = collect_best(row);

  BestResponse out;
  out.value = *std::max_element(row.begin(), row.end());
  out.actions.reserve(best.size());
  for (long idx : best)
    out.actions.push_back(idx < 0 ? Action::no_operate() : Action::price(idx));

  if (opponent.operates()) {
    const long l = opponent.index();
    const GridOptimum hi = high_price_optimum(p, q, grid);
    const bool duopoly = hi.value >= 0.0;
    bool inside = true;
    for (long idx : best) {
      const bool ok = idx == -1 || idx == l || idx == l - 1 || (duopoly && idx == hi.index);
      inside = inside && ok;
    }
    out.within_candidate_set = inside;
  }
  return out;
}

EquilibriumSet brute_force_nash(const MarketParams& p, double q, const PriceGrid& grid) {
  if (!grid.covers(p)) throw GridTooCoarse();
  const long n = grid.max_index + 2;
  std::vector<std::vector<long>> br(static_cast<size_t>(n));

  parallel_for(0, n, [&](long opp_slot) {
    thread_local std::vector<double> row;
    fill_response_row(p, grid, q, opp_slot - 1, row);
    br[static_cast<size_t>(opp_slot)] = collect_best(row);
  });

  EquilibriumSet out;
  out.source = EquilibriumSource::BruteForce;
  out.regime = classify_regime(p, q, grid);
  out.shutdown_ne = contains_index(br[0], -1);

  for (long own : br[0])
    if (own >= 0 && contains_index(br[static_cast<size_t>(own + 1)], -1))
      out.one_sided.push_back(own);

  for (long opp = 0; opp <= grid.max_index; ++opp) {
    const auto& responses = br[static_cast<size_t>(opp + 1)];
    for (long own : responses) {
      if (own < 0) continue;
      if (own == opp) {
        out.symmetric.push_back(own);
      } else if (contains_index(br[static_cast<size_t>(own + 1)], opp)) {
        out.asymmetric.emplace_back(own, opp);
      }
    }
  }
  std::sort(out.asymmetric.begin(), out.asymmetric.end());
  return out;
}

SymmetricNeInterval symmetric_ne_interval(const MarketParams& p, double q,
                                          const PriceGrid& grid) {
  if (monopoly_grid_optimum(p, q, grid).value < 0.0)
    throw HypothesisViolated("supplier price lies in the complete choking regime");
  if (q > matched_choke_price(p))
    throw HypothesisViolated("supplier price exceeds the matched-operation choke price");

  const double a = p.alpha * (1.0 - p.eps);
  const double c = p.effective_cost(q);
  const double w2_star = high_price_optimum(p, q, grid).value;

  SymmetricNeInterval iv;
  iv.duopoly = w2_star >= 0.0;
  iv.lambda_s = p.d_bar + a * c;
  iv.lambda_s_under = p.d_bar - a * c;
  iv.rho_s = -p.d_bar * c - clamp_pos(w2_star) - p.o_m;
  const GapCoeffs g = gap_coeffs(p, q, grid.delta);
  iv.lambda_e = g.lambda_e;
  iv.rho_e = g.rho_e;

  // Zero-profit band of the matched utility. The discriminant is nonnegative
  // under the hypothesis; clamp away rounding at the exact choke price.
  const double tight_disc =
      clamp_pos(iv.lambda_s_under * iv.lambda_s_under - 4.0 * a * p.o_m);
  const double tight_root = std::sqrt(tight_disc);
  iv.tight_lo = 2.0 * (c * p.d_bar + p.o_m) / (iv.lambda_s + tight_root);
  iv.tight_hi = (iv.lambda_s + tight_root) / (2.0 * a);

  const double v_root = undercut_gap_root(p, g);
  iv.tilde_e = std::min(v_root, iv.tight_hi);

  if (iv.duopoly) {
    // Matching must also beat the best strictly-higher price, which shifts
    // the band inward by the high-price optimum value.
    const double dp_disc = clamp_pos(iv.lambda_s * iv.lambda_s + 4.0 * a * iv.rho_s);
    const double dp_root = std::sqrt(dp_disc);
    const double dp_lo = -2.0 * iv.rho_s / (iv.lambda_s + dp_root);
    const double dp_hi = (iv.lambda_s + dp_root) / (2.0 * a);
    iv.s = std::max(iv.tight_lo, dp_lo);
    iv.e = std::min(dp_hi, iv.tilde_e);
  } else {
    iv.s = iv.tight_lo;
    iv.e = iv.tilde_e;
  }

  const auto fp_guard = [](double x) { return 1e-12 * std::max(1.0, std::fabs(x)); };
  long first = static_cast<long>(std::ceil((iv.s - fp_guard(iv.s)) / grid.delta));
  long last = static_cast<long>(std::floor((iv.e + fp_guard(iv.e)) / grid.delta));
  first = std::max<long>(first, 1);
  last = std::min(last, grid.max_index);
  iv.nonempty = first <= last;
  iv.first_index = first;
  iv.last_index = iv.nonempty ? last : first - 1;
  return iv;
}

std::vector<long> predicted_symmetric_indices(const SymmetricNeInterval& iv) {
  std::vector<long> out;
  if (!iv.nonempty) return out;
  out.reserve(static_cast<size_t>(iv.last_index - iv.first_index + 1));
  for (long l = iv.first_index; l <= iv.last_index; ++l) out.push_back(l);
  return out;
}

bool near_interval_boundary(const SymmetricNeInterval& iv, const PriceGrid& grid, long l) {
  const double x = grid.price(l);
  const auto tol = [&](double endpoint) {
    return std::max(kAbsTol, kRelTol * std::max({1.0, std::fabs(x), std::fabs(endpoint)}));
  };
  return std::fabs(x - iv.s) <= tol(iv.s) || std::fabs(x - iv.e) <= tol(iv.e);
}

StepUtilityGap match_vs_undercut_gap(const MarketParams& p, double q, const PriceGrid& grid,
                                     long l) {
  assert(l >= 1);
  const double x = grid.price(l);
  const double lower = grid.price(l - 1);
  StepUtilityGap gap;
  gap.direct =
      matched_price_utility(p, q, x) - low_price_utility(p, q, lower, x);
  const GapCoeffs g = gap_coeffs(p, q, grid.delta);
  gap.quadratic = -x * x * p.alpha * p.eps + x * g.lambda_e + g.rho_e;
  const double matched_dem = p.d_bar - p.alpha * (1.0 - p.eps) * x;
  const double undercut_dem = p.d_bar - p.alpha * (1.0 - p.eps) * lower + p.eps * p.alpha * x;
  gap.clamp_free = matched_dem >= 0.0 && undercut_dem >= 0.0;
  return gap;
}

AsymmetricNe asymmetric_ne(const MarketParams& p, double q, const PriceGrid& grid) {
  AsymmetricNe out;
  const GridOptimum hi = high_price_optimum(p, q, grid);
  out.high_index = hi.index;
  out.regime_allows = hi.value >= 0.0;
  if (!out.regime_allows || hi.index < 1) return out;

  const GapCoeffs g = gap_coeffs(p, q, grid.delta);
  out.threshold_met = near_ge(hi.price, undercut_gap_root(p, g));

  const double low_price = grid.price(hi.index - 1);
  double worst_deviation = matched_price_utility(p, q, low_price);
  if (hi.index >= 2) {
    worst_deviation = std::min(
        worst_deviation, low_price_utility(p, q, grid.price(hi.index - 2), low_price));
  }
  out.no_deviation_met = near_ge(hi.value, worst_deviation);

  const auto in_br = [](const BestResponse& br, Action a) {
    return std::find(br.actions.begin(), br.actions.end(), a) != br.actions.end();
  };
  const BestResponse vs_low = best_response(p, q, grid, Action::price(hi.index - 1));
  const BestResponse vs_high = best_response(p, q, grid, Action::price(hi.index));
  out.verified =
      in_br(vs_low, Action::price(hi.index)) && in_br(vs_high, Action::price(hi.index - 1));
  if (out.verified) {
    out.profiles = {{hi.index - 1, hi.index}, {hi.index, hi.index - 1}};
  }
  return out;
}

ClosedFormEquilibria closed_form_equilibria(const MarketParams& p, double q,
                                            const PriceGrid& grid) {
  ClosedFormEquilibria cf;
  cf.set.source = EquilibriumSource::ClosedForm;
  cf.set.regime = classify_regime(p, q, grid);
  cf.set.shutdown_ne = near_ge(0.0, monopoly_grid_optimum(p, q, grid).value);
  if (cf.set.regime != RegimeLabel::CompleteChoking && q <= matched_choke_price(p)) {
    cf.interval = symmetric_ne_interval(p, q, grid);
    cf.set.symmetric = predicted_symmetric_indices(*cf.interval);
  }
  cf.asym = asymmetric_ne(p, q, grid);
  cf.set.asymmetric = cf.asym.profiles;
  return cf;
}

namespace {

// An equilibrium that holds only through an exact utility tie: some player is
// indifferent between its action and another one. Such pairs appear at
// measure-zero parameter points and are settled by the oracle.
bool tie_degenerate_profile(const MarketParams& p, const PriceGrid& grid, double q, long a,
                            long b) {
  const auto side_is_tied = [&](long own, long opp) {
    std::vector<double> row;
    fill_response_row(p, grid, q, opp, row);
    const double current = row[static_cast<size_t>(own + 1)];
    for (long s = 0; s < static_cast<long>(row.size()); ++s) {
      if (s == own + 1) continue;
      if (near_ge(row[static_cast<size_t>(s)], current)) return true;
    }
    return false;
  };
  return side_is_tied(a, b) || side_is_tied(b, a);
}

}  // namespace

NeComparison compare_equilibria(const MarketParams& p, double q, const PriceGrid& grid,
                                const ClosedFormEquilibria& closed,
                                const EquilibriumSet& oracle) {
  NeComparison diff;
  const auto classify_symmetric = [&](long l, std::vector<long>& non_boundary) {
    if (closed.interval && near_interval_boundary(*closed.interval, grid, l))
      diff.boundary_symmetric.push_back(l);
    else
      non_boundary.push_back(l);
  };
  std::vector<long> closed_only, oracle_only;
  std::set_difference(closed.set.symmetric.begin(), closed.set.symmetric.end(),
                      oracle.symmetric.begin(), oracle.symmetric.end(),
                      std::back_inserter(closed_only));
  std::set_difference(oracle.symmetric.begin(), oracle.symmetric.end(),
                      closed.set.symmetric.begin(), closed.set.symmetric.end(),
                      std::back_inserter(oracle_only));
  for (long l : closed_only) classify_symmetric(l, diff.closed_only_symmetric);
  for (long l : oracle_only) classify_symmetric(l, diff.oracle_only_symmetric);

  std::set_difference(closed.set.asymmetric.begin(), closed.set.asymmetric.end(),
                      oracle.asymmetric.begin(), oracle.asymmetric.end(),
                      std::back_inserter(diff.closed_only_asymmetric));
  std::vector<std::pair<long, long>> oracle_extra;
  std::set_difference(oracle.asymmetric.begin(), oracle.asymmetric.end(),
                      closed.set.asymmetric.begin(), closed.set.asymmetric.end(),
                      std::back_inserter(oracle_extra));
  for (const auto& pair : oracle_extra) {
    if (tie_degenerate_profile(p, grid, q, pair.first, pair.second))
      diff.boundary_asymmetric.push_back(pair);
    else
      diff.oracle_only_asymmetric.push_back(pair);
  }

  diff.shutdown_mismatch = closed.set.shutdown_ne != oracle.shutdown_ne;
  return diff;
}

MinDeltaReport min_delta_no_ne(const MarketParams& p, double q, double delta_hi, int halvings) {
  MinDeltaReport report;
  double delta = delta_hi;
  for (int k = 0; k <= halvings; ++k, delta *= 0.5) {
    const PriceGrid grid = PriceGrid::covering(p, delta);
    const EquilibriumSet ne = brute_force_nash(p, q, grid);
    MinDeltaTraceRow row;
    row.delta = delta;
    row.symmetric = static_cast<long>(ne.symmetric.size());
    row.asymmetric = static_cast<long>(ne.asymmetric.size());
    row.one_sided = static_cast<long>(ne.one_sided.size());
    row.operating = ne.operating_count();
    report.trace.push_back(row);
    if (row.operating == 0 &&
        (!report.largest_no_ne_delta || delta > *report.largest_no_ne_delta)) {
      report.largest_no_ne_delta = delta;
    }
  }
  return report;
}

}  // namespace scgame

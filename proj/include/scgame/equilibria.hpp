#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scgame/market.hpp"
#include "scgame/payoffs.hpp"

namespace scgame {

// Supplier-price regimes of the manufacturer game, decided by the grid maxima
// of the monopoly and high-price utilities. Exactly one label holds.
enum class RegimeLabel {
  CompleteChoking,  // even a lone manufacturer loses money
  PartialChoking,   // a lone manufacturer survives, the pricier of two does not
  Duopoly,          // the pricier manufacturer can still operate profitably
};

RegimeLabel classify_regime(const MarketParams& p, double q, const PriceGrid& grid);

class HypothesisViolated : public std::runtime_error {
 public:
  explicit HypothesisViolated(const std::string& what) : std::runtime_error(what) {}
};

class GridTooCoarse : public std::runtime_error {
 public:
  GridTooCoarse()
      : std::runtime_error("price grid truncation bound too small for these parameters") {}
};

struct BestResponse {
  std::vector<Action> actions;  // ascending by index; NoOperate sorts first
  double value = 0.0;
  // Whether the responses fall inside the regime's small candidate set
  // {one step under, match, high-price optimum, NoOperate}. Unset when the
  // opponent does not operate. Violations are possible where demand clamps
  // bind; callers report them rather than assert.
  std::optional<bool> within_candidate_set;
};

// Exact, tie-inclusive argmax of the manufacturer's utility over the whole
// action set against a fixed opponent action.
BestResponse best_response(const MarketParams& p, double q, const PriceGrid& grid,
                           Action opponent);

enum class EquilibriumSource { ClosedForm, BruteForce };

struct EquilibriumSet {
  RegimeLabel regime = RegimeLabel::Duopoly;
  std::vector<long> symmetric;  // grid indices l with (l, l) a pure NE, ascending
  // Ordered operating profiles (a_i, a_j) with a_i != a_j; mirrors included.
  std::vector<std::pair<long, long>> asymmetric;
  // Indices a where (a, NoOperate) and its mirror are pure NEs. The closed
  // forms make no prediction here; only the oracle fills it.
  std::vector<long> one_sided;
  bool shutdown_ne = false;  // (NoOperate, NoOperate) is a pure NE
  EquilibriumSource source = EquilibriumSource::BruteForce;

  long operating_count() const {
    return static_cast<long>(symmetric.size() + asymmetric.size());
  }
};

// Ground truth: enumerates every profile over the truncated grid plus
// NoOperate, with tie-inclusive best responses. Deterministic ordering.
EquilibriumSet brute_force_nash(const MarketParams& p, double q, const PriceGrid& grid);

// Closed-form symmetric-NE price interval [s, e] and its coefficients.
struct SymmetricNeInterval {
  double s = 0.0;
  double e = 0.0;
  double tilde_e = 0.0;    // cap from the one-step-undercut condition
  double tight_lo = 0.0;   // zero-profit band of the matched utility
  double tight_hi = 0.0;
  double lambda_s = 0.0;
  double rho_s = 0.0;
  double lambda_e = 0.0;
  double rho_e = 0.0;
  double lambda_s_under = 0.0;
  bool duopoly = false;    // whether the high-price cap was in force
  bool nonempty = false;   // s <= e with some grid multiple l >= 1 inside
  long first_index = 0;    // valid when nonempty
  long last_index = -1;
};

// Requires q outside complete choking and q <= matched_choke_price; throws
// HypothesisViolated otherwise.
SymmetricNeInterval symmetric_ne_interval(const MarketParams& p, double q, const PriceGrid& grid);

std::vector<long> predicted_symmetric_indices(const SymmetricNeInterval& iv);

// Grid points within tolerance of s or e; disagreements there are settled by
// the oracle, not the interval.
bool near_interval_boundary(const SymmetricNeInterval& iv, const PriceGrid& grid, long l);

// v(l): gain from matching the rival's price l*delta over undercutting it by
// one step, evaluated two independent ways for cross-validation.
struct StepUtilityGap {
  double direct = 0.0;     // difference of the two utility evaluations
  double quadratic = 0.0;  // closed-form polynomial in l*delta
  bool clamp_free = true;  // both demand expressions nonnegative, identity exact
};

StepUtilityGap match_vs_undercut_gap(const MarketParams& p, double q, const PriceGrid& grid,
                                     long l);

struct AsymmetricNe {
  // Ordered profiles; both mirrors present when the candidate is an NE.
  std::vector<std::pair<long, long>> profiles;
  bool regime_allows = false;   // duopoly regime required
  bool threshold_met = false;   // high-price optimum past the undercut-gap root
  bool no_deviation_met = false;
  bool verified = false;        // direct best-response confirmation
  long high_index = 0;          // the candidate pair is (high, high - 1)
};

// The only admissible asymmetric candidate is one step under the high-price
// optimum; it is reported only after direct best-response verification.
AsymmetricNe asymmetric_ne(const MarketParams& p, double q, const PriceGrid& grid);

struct ClosedFormEquilibria {
  EquilibriumSet set;
  std::optional<SymmetricNeInterval> interval;  // absent when hypotheses fail
  AsymmetricNe asym;
};

ClosedFormEquilibria closed_form_equilibria(const MarketParams& p, double q,
                                            const PriceGrid& grid);

// Oracle-vs-closed-form diff. Two kinds of disagreement are tolerated, with
// the oracle deciding both: symmetric prices within tolerance of an interval
// endpoint, and asymmetric pairs that are equilibria only through exact
// utility ties (they evaporate under any strict perturbation). Everything
// else must match.
struct NeComparison {
  std::vector<long> closed_only_symmetric;
  std::vector<long> oracle_only_symmetric;
  std::vector<long> boundary_symmetric;  // differing but boundary-tolerated
  std::vector<std::pair<long, long>> closed_only_asymmetric;
  std::vector<std::pair<long, long>> oracle_only_asymmetric;
  std::vector<std::pair<long, long>> boundary_asymmetric;  // tie-degenerate
  bool shutdown_mismatch = false;

  bool agrees() const {
    return closed_only_symmetric.empty() && oracle_only_symmetric.empty() &&
           closed_only_asymmetric.empty() && oracle_only_asymmetric.empty() &&
           !shutdown_mismatch;
  }
};

NeComparison compare_equilibria(const MarketParams& p, double q, const PriceGrid& grid,
                                const ClosedFormEquilibria& closed,
                                const EquilibriumSet& oracle);

struct MinDeltaTraceRow {
  double delta = 0.0;
  long symmetric = 0;
  long asymmetric = 0;
  long one_sided = 0;
  long operating = 0;
};

struct MinDeltaReport {
  std::vector<MinDeltaTraceRow> trace;
  std::optional<double> largest_no_ne_delta;
};

// Halves delta from delta_hi up to `halvings` times, running the oracle at
// each step; reports the largest tested delta with no operating NE.
MinDeltaReport min_delta_no_ne(const MarketParams& p, double q, double delta_hi, int halvings);

}  // namespace scgame

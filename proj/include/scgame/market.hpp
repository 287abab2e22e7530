#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace scgame {

// Model constants for the two-echelon market: one supplier, two symmetric
// manufacturers, a loyal customer base per manufacturer and a strategic
// (non-loyal, product-desiring) fraction that picks sides by price.
struct MarketParams {
  double d_bar = 8.0;   // market potential per manufacturer
  double alpha = 0.5;   // price sensitivity of the loyal base
  double eps = 0.8;     // essentialness factor, in [0, 1)
  double omega = 0.0;   // QoS trade-off weight (0 = price-only customers)
  double h = 1.0;       // QoS intercept; cancels out of customer choices
  double c_m = 2.0;     // manufacturer per-unit production cost
  double o_m = 2.0;     // manufacturer fixed operating cost
  double c_s = 0.01;    // supplier per-unit procurement cost
  double o_s = 0.01;    // supplier fixed operating cost

  double effective_cost(double q) const { return c_m + q; }
  // Survival margin: market potential minus what the cost structure eats.
  // Must be positive for operating equilibria to be possible at low q.
  double a1_margin() const {
    return d_bar - (alpha * (c_s + c_m) - 2.0 * std::sqrt(alpha * o_m));
  }
};

class InvalidParams : public std::runtime_error {
 public:
  enum class Code {
    DBarNonPositive,
    AlphaNonPositive,
    EpsOutOfRange,
    OmegaNegative,
    NegativeCost,
    A1Violated,
  };
  InvalidParams(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
  Code code;
};

class OmegaZero : public std::runtime_error {
 public:
  OmegaZero() : std::runtime_error("omega must be positive for the QoS-weighted customer model") {}
};

// Returns the params unchanged iff every invariant holds, including the
// sufficient-market-potential condition a1_margin() > 0.
MarketParams validate_params(const MarketParams& p);

// Prices live on {0, delta, 2*delta, ..., max_index*delta}. All price
// arithmetic stays in the integer index domain; doubles appear only when a
// utility is evaluated.
struct PriceGrid {
  double delta = 1.0;
  long max_index = 0;

  double price(long index) const { return static_cast<double>(index) * delta; }
  double max_price() const { return price(max_index); }

  // Upper bound beyond which no action has positive demand or positive
  // margin; the grid must extend at least one step past it so truncation
  // never clips a best response.
  static double demand_support_bound(const MarketParams& p) {
    return p.d_bar * (1.0 + p.eps) / (p.alpha * (1.0 - p.eps));
  }
  bool covers(const MarketParams& p) const {
    return delta > 0.0 && max_price() >= demand_support_bound(p) + delta;
  }
  // Smallest grid satisfying covers().
  static PriceGrid covering(const MarketParams& p, double delta);
};

// A manufacturer either quotes a grid price or stays out of the market.
class Action {
 public:
  static Action no_operate() { return Action(kNoOperate); }
  static Action price(long index) { return Action(index); }

  bool operates() const { return index_ != kNoOperate; }
  long index() const { return index_; }

  friend bool operator==(const Action&, const Action&) = default;

 private:
  static constexpr long kNoOperate = -1;
  explicit Action(long index) : index_(index) {}
  long index_;
};

// Supplier side of a joint action: a quoted price, or not operating.
using SupplierAction = std::optional<double>;

struct ActionProfile {
  Action a_i = Action::no_operate();
  Action a_j = Action::no_operate();
  SupplierAction q;
};

// Price-vs-congestion weight of the QoS-sensitive customer model.
inline double qos_gamma(const MarketParams& p) {
  return (1.0 - p.alpha * p.omega) / (2.0 * p.omega);
}

enum class BoundaryCase {
  AllToI,      // every strategic customer picks manufacturer i
  AllToJ,
  Interior,    // indifference split
  Degenerate,  // the strategic mass is zero, split carries no demand
};

struct MeanFieldSplit {
  double mu_i = 0.5;
  double mu_j = 0.5;
  BoundaryCase boundary_case = BoundaryCase::Interior;
};

// Population split of the strategic customers when they weigh price against
// congestion (omega > 0). Throws OmegaZero at omega == 0; use the price-only
// variant there. Degenerate cases (zero strategic mass, or an indifference
// condition with zero divisor) return an even split.
MeanFieldSplit mean_field_split_general(const MarketParams& p, double p_i, double p_j);

// omega == 0 limit: the cheaper manufacturer takes the whole strategic mass,
// ties split evenly. Both actions must be prices.
MeanFieldSplit mean_field_split_price_only(Action a_i, Action a_j);

// Per-customer cost of choosing manufacturer `i_side ? i : j` under split mu.
// The split formulas are the equilibria of exactly this cost: its support
// lies inside the cost-minimizing choices. Differences are independent of h.
double customer_cost(const MarketParams& p, double p_i, double p_j, const MeanFieldSplit& mu,
                     bool i_side);

// Demand attracted by manufacturer i in the price-only model. a_i must be a
// price. Clamped at zero after the full linear expression.
double demand(const MarketParams& p, const PriceGrid& grid, Action a_i, Action a_j);

// Demand under the QoS-weighted split, evaluated branch-for-branch as the
// model states it (the monopoly line is not clamped there and is kept as
// is). Requires omega > 0 when the opponent operates.
double demand_general(const MarketParams& p, double p_i, std::optional<double> p_j);

}  // namespace scgame

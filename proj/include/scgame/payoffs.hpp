#pragma once

#include <cmath>

#include "scgame/market.hpp"
#include "scgame/numeric.hpp"

namespace scgame {

// The manufacturer game at a fixed supplier quote decomposes into four
// price-region utilities. Each is demand times margin minus the fixed
// operating cost, with demand clamped after the full linear expression.

// Utility of the strictly cheaper manufacturer: it keeps its own base and
// attracts the whole strategic mass.
inline double low_price_utility(const MarketParams& p, double q, double own, double rival) {
  const double dem = clamp_pos(p.d_bar - p.alpha * own * (1.0 - p.eps) + p.eps * p.alpha * rival);
  return dem * (own - p.effective_cost(q)) - p.o_m;
}

// Utility of the strictly pricier manufacturer: reduced loyal base only.
inline double high_price_utility(const MarketParams& p, double q, double own) {
  const double dem = clamp_pos(p.d_bar - p.alpha * own);
  return dem * (own - p.effective_cost(q)) - p.o_m;
}

// Equal prices: the strategic mass splits evenly.
inline double matched_price_utility(const MarketParams& p, double q, double own) {
  const double dem = clamp_pos(p.d_bar - p.alpha * own * (1.0 - p.eps));
  return dem * (own - p.effective_cost(q)) - p.o_m;
}

// Rival out of the market: the lone manufacturer also draws the strategic
// part of the rival's abandoned base.
inline double monopoly_utility(const MarketParams& p, double q, double own) {
  const double dem = clamp_pos(p.d_bar * (1.0 + p.eps) - p.alpha * own * (1.0 - p.eps));
  return dem * (own - p.effective_cost(q)) - p.o_m;
}

enum class Manufacturer { i, j };

// Full five-case dispatch over an action profile. NoOperate earns exactly 0;
// an operating manufacturer facing a non-operating supplier is charged its
// fixed cost (the margin term vanishes with the supplier).
double manufacturer_utility(const MarketParams& p, const PriceGrid& grid,
                            const ActionProfile& profile, Manufacturer who);

// Supplier revenue over both manufacturers' demand, minus its fixed cost;
// zero when the supplier does not operate.
double supplier_utility_raw(const MarketParams& p, const PriceGrid& grid,
                            const ActionProfile& profile);

// Maximizer of a unimodal f over the grid, given the maximizer of its
// continuous relaxation. Ties within tolerance go to the floor neighbor (a
// ceiling choice could drift into the next price region).
template <class F>
long grid_argmax(F&& f, double relaxed_argmax, const PriceGrid& grid) {
  double pos = relaxed_argmax / grid.delta;
  if (pos < 0.0) pos = 0.0;
  const double top = static_cast<double>(grid.max_index);
  if (pos > top) pos = top;
  long lo = static_cast<long>(std::floor(pos));
  long hi = static_cast<long>(std::ceil(pos));
  if (lo < 0) lo = 0;
  if (hi > grid.max_index) hi = grid.max_index;
  if (lo == hi) return lo;
  return near_ge(f(grid.price(lo)), f(grid.price(hi))) ? lo : hi;
}

struct GridOptimum {
  long index = 0;
  double price = 0.0;
  double value = 0.0;
};

// Grid maximum of the high-price utility; its value decides the duopoly
// regime and its index is the candidate high price of asymmetric equilibria.
GridOptimum high_price_optimum(const MarketParams& p, double q, const PriceGrid& grid);

// Grid maximum of the monopoly utility; negative value means even a lone
// manufacturer cannot operate.
GridOptimum monopoly_grid_optimum(const MarketParams& p, double q, const PriceGrid& grid);

// Relaxed-domain vertices of the four utilities (used to seed grid_argmax).
inline double high_price_vertex(const MarketParams& p, double q) {
  return 0.5 * (p.d_bar / p.alpha + p.effective_cost(q));
}
inline double matched_price_vertex(const MarketParams& p, double q) {
  return 0.5 * (p.d_bar / (p.alpha * (1.0 - p.eps)) + p.effective_cost(q));
}
inline double monopoly_vertex(const MarketParams& p, double q) {
  return 0.5 * (p.d_bar * (1.0 + p.eps) / (p.alpha * (1.0 - p.eps)) + p.effective_cost(q));
}
inline double low_price_vertex(const MarketParams& p, double q, double rival) {
  return 0.5 * ((p.d_bar + p.eps * p.alpha * rival) / (p.alpha * (1.0 - p.eps)) +
                p.effective_cost(q));
}

// Supplier price beyond which a lone manufacturer's best relaxed utility
// turns negative.
double monopoly_choke_price(const MarketParams& p);

// Relaxed maximum of the monopoly utility, zero past the choke price.
double monopoly_peak_utility(const MarketParams& p, double q);

// Supplier price beyond which no matched price pair is profitable.
double matched_choke_price(const MarketParams& p);

}  // namespace scgame

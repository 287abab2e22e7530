#include "scgame/payoffs.hpp"

#include <cmath>

namespace scgame {

namespace {

double own_vs_rival_utility(const MarketParams& p, const PriceGrid& grid, SupplierAction q,
                            Action own, Action rival) {
  if (!own.operates()) return 0.0;
  if (!q.has_value()) return -p.o_m;  // supplier out: margin term vanishes
  const double own_price = grid.price(own.index());
  if (!rival.operates()) return monopoly_utility(p, *q, own_price);
  if (own.index() < rival.index())
    return low_price_utility(p, *q, own_price, grid.price(rival.index()));
  if (own.index() > rival.index()) return high_price_utility(p, *q, own_price);
  return matched_price_utility(p, *q, own_price);
}

}  // namespace

double manufacturer_utility(const MarketParams& p, const PriceGrid& grid,
                            const ActionProfile& profile, Manufacturer who) {
  return who == Manufacturer::i
             ? own_vs_rival_utility(p, grid, profile.q, profile.a_i, profile.a_j)
             : own_vs_rival_utility(p, grid, profile.q, profile.a_j, profile.a_i);
}

double supplier_utility_raw(const MarketParams& p, const PriceGrid& grid,
                            const ActionProfile& profile) {
  if (!profile.q.has_value()) return 0.0;
  double total_demand = 0.0;
  if (profile.a_i.operates()) total_demand += demand(p, grid, profile.a_i, profile.a_j);
  if (profile.a_j.operates()) total_demand += demand(p, grid, profile.a_j, profile.a_i);
  return total_demand * (*profile.q - p.c_s) - p.o_s;
}

GridOptimum high_price_optimum(const MarketParams& p, double q, const PriceGrid& grid) {
  const auto f = [&](double price) { return high_price_utility(p, q, price); };
  GridOptimum opt;
  opt.index = grid_argmax(f, high_price_vertex(p, q), grid);
  opt.price = grid.price(opt.index);
  opt.value = f(opt.price);
  return opt;
}

GridOptimum monopoly_grid_optimum(const MarketParams& p, double q, const PriceGrid& grid) {
  const auto f = [&](double price) { return monopoly_utility(p, q, price); };
  GridOptimum opt;
  opt.index = grid_argmax(f, monopoly_vertex(p, q), grid);
  opt.price = grid.price(opt.index);
  opt.value = f(opt.price);
  return opt;
}

double monopoly_choke_price(const MarketParams& p) {
  const double a = p.alpha * (1.0 - p.eps);
  return (p.d_bar * (1.0 + p.eps) - a * p.c_m - 2.0 * std::sqrt(a * p.o_m)) / a;
}

double monopoly_peak_utility(const MarketParams& p, double q) {
  if (q > monopoly_choke_price(p)) return 0.0;
  const double a = p.alpha * (1.0 - p.eps);
  const double top = p.d_bar * (1.0 + p.eps) - a * p.effective_cost(q);
  return top * top / (4.0 * a) - p.o_m;
}

double matched_choke_price(const MarketParams& p) {
  const double a = p.alpha * (1.0 - p.eps);
  return (p.d_bar - a * p.c_m - 2.0 * std::sqrt(a * p.o_m)) / a;
}

}  // namespace scgame

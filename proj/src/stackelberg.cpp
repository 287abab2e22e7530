#include "scgame/stackelberg.hpp"

#include <cmath>
#include <limits>

#include "scgame/numeric.hpp"

namespace scgame {

FocalNe focal_ne(const MarketParams& p, double q, const PriceGrid& grid) {
  const EquilibriumSet ne = brute_force_nash(p, q, grid);
  FocalNe focal;
  for (long l : ne.symmetric) {
    if (l < 1) continue;
    const double value = matched_price_utility(p, q, grid.price(l));
    // Strictly-greater keeps the lower price on ties.
    if (!focal.exists || value > focal.utility) {
      focal.exists = true;
      focal.index = l;
      focal.price = grid.price(l);
      focal.utility = value;
    }
  }
  return focal;
}

double supplier_utility_at_matched(const MarketParams& p, double price, double q) {
  const double dem = clamp_pos(p.d_bar - p.alpha * (1.0 - p.eps) * price);
  return 2.0 * dem * (q - p.c_s) - p.o_s;
}

SupplierSweep supplier_sweep(const MarketParams& p, const PriceGrid& grid, QGridSpec q_grid) {
  SupplierSweep sweep;
  if (!(q_grid.q_step > 0.0) || q_grid.q_max < q_grid.q_step) return sweep;
  const long steps = static_cast<long>(
      std::floor(q_grid.q_max / q_grid.q_step + 1e-9));
  sweep.rows.resize(static_cast<size_t>(steps));

  parallel_for(1, steps + 1, [&](long k) {
    const double q = static_cast<double>(k) * q_grid.q_step;
    SupplierSweepRow row;
    row.q = q;
    row.regime = classify_regime(p, q, grid);
    row.focal = focal_ne(p, q, grid);
    if (row.focal.exists) {
      row.u_m = row.focal.utility;
      row.u_s = supplier_utility_at_matched(p, row.focal.price, q);
    } else {
      row.u_m = std::numeric_limits<double>::quiet_NaN();
      row.u_s = std::numeric_limits<double>::quiet_NaN();
    }
    sweep.rows[static_cast<size_t>(k - 1)] = row;
  });

  for (const auto& row : sweep.rows) {
    if (high_price_optimum(p, row.q, grid).value < 0.0) {
      sweep.partial_choking_q = row.q;
      break;
    }
  }
  return sweep;
}

OptimalSupplierPrice optimal_supplier_price(const std::vector<SupplierSweepRow>& rows) {
  bool found = false;
  OptimalSupplierPrice best;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].focal.exists) continue;
    if (!found || rows[i].u_s > best.u_s) {
      best = {rows[i].q, rows[i].u_s, i};
      found = true;
    }
  }
  if (!found) throw NoFeasibleQ();
  return best;
}

}  // namespace scgame

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "scgame/equilibria.hpp"

namespace scgame {

// The symmetric NE both manufacturers would settle on: the one paying the
// highest common utility. Asymmetric equilibria are never focal (they invite
// price wars).
struct FocalNe {
  bool exists = false;
  long index = 0;       // grid index of the focal price
  double price = 0.0;
  double utility = 0.0; // common manufacturer utility at the focal pair
};

// Oracle-confirmed focal selection; ties break toward the lower price.
FocalNe focal_ne(const MarketParams& p, double q, const PriceGrid& grid);

struct SupplierSweepRow {
  double q = 0.0;
  RegimeLabel regime = RegimeLabel::Duopoly;
  FocalNe focal;
  double u_s = 0.0;  // meaningful only when focal.exists
  double u_m = 0.0;
};

struct QGridSpec {
  double q_step = 0.0;
  double q_max = 0.0;

  // The sweep granularity is a modelling stand-in (the supplier may well
  // quote on a continuum); defaults follow the manufacturers' grid.
  static QGridSpec defaults(const MarketParams& p, const PriceGrid& grid) {
    return {grid.delta / 10.0, monopoly_choke_price(p) + grid.delta};
  }
};

struct SupplierSweep {
  std::vector<SupplierSweepRow> rows;  // ascending in q
  // Smallest swept q at which the pricier manufacturer's best utility turns
  // negative (onset of partial choking).
  std::optional<double> partial_choking_q;
};

SupplierSweep supplier_sweep(const MarketParams& p, const PriceGrid& grid, QGridSpec q_grid);

// Supplier utility when both manufacturers sell at `price`: two equal demands
// at the matched split.
double supplier_utility_at_matched(const MarketParams& p, double price, double q);

class NoFeasibleQ : public std::runtime_error {
 public:
  NoFeasibleQ() : std::runtime_error("no swept supplier price admits a focal NE") {}
};

struct OptimalSupplierPrice {
  double q = 0.0;
  double u_s = 0.0;
  size_t row = 0;
};

// Argmax over feasible rows; ties break toward the smaller q. Throws
// NoFeasibleQ when every row lacks a focal NE.
OptimalSupplierPrice optimal_supplier_price(const std::vector<SupplierSweepRow>& rows);

}  // namespace scgame

#include "scgame/market.hpp"

#include <cassert>
#include <cmath>

#include "scgame/numeric.hpp"

namespace scgame {

MarketParams validate_params(const MarketParams& p) {
  using Code = InvalidParams::Code;
  if (!(p.d_bar > 0.0)) throw InvalidParams(Code::DBarNonPositive, "d_bar must be > 0");
  if (!(p.alpha > 0.0)) throw InvalidParams(Code::AlphaNonPositive, "alpha must be > 0");
  if (!(p.eps >= 0.0 && p.eps < 1.0))
    throw InvalidParams(Code::EpsOutOfRange, "eps must lie in [0, 1)");
  if (!(p.omega >= 0.0)) throw InvalidParams(Code::OmegaNegative, "omega must be >= 0");
  if (!(p.c_m >= 0.0 && p.o_m >= 0.0 && p.c_s >= 0.0 && p.o_s >= 0.0))
    throw InvalidParams(Code::NegativeCost, "costs must be >= 0");
  if (!(p.a1_margin() > 0.0))
    throw InvalidParams(Code::A1Violated,
                        "market potential too small: d_bar must exceed "
                        "alpha*(c_s+c_m) - 2*sqrt(alpha*o_m)");
  return p;
}

PriceGrid PriceGrid::covering(const MarketParams& p, double delta) {
  PriceGrid g;
  g.delta = delta;
  const double bound = demand_support_bound(p) + delta;
  g.max_index = static_cast<long>(std::ceil(bound / delta));
  while (!g.covers(p)) ++g.max_index;  // guard against rounding at the boundary
  return g;
}

MeanFieldSplit mean_field_split_general(const MarketParams& p, double p_i, double p_j) {
  if (!(p.omega > 0.0)) throw OmegaZero();
  const double loyalty_gap = (p_i - p_j) * (1.0 - p.alpha * p.omega);
  const double strategic_pull = (p_i + p_j) * p.alpha * p.omega * p.eps;
  if (loyalty_gap > strategic_pull) return {0.0, 1.0, BoundaryCase::AllToJ};
  if (loyalty_gap < -strategic_pull) return {1.0, 0.0, BoundaryCase::AllToI};
  const double divisor = 2.0 * p.alpha * p.omega * p.eps * (p_i + p_j);
  if (divisor == 0.0) {
    // Zero strategic mass (p_i + p_j = 0 or eps = 0) or a flat indifference
    // condition: the split carries no demand, report an even one.
    return {0.5, 0.5, BoundaryCase::Degenerate};
  }
  const double mu_i = 0.5 - loyalty_gap / divisor;
  return {mu_i, 1.0 - mu_i, BoundaryCase::Interior};
}

MeanFieldSplit mean_field_split_price_only(Action a_i, Action a_j) {
  assert(a_i.operates() && a_j.operates());
  const long li = a_i.index();
  const long lj = a_j.index();
  if (li < lj) return {1.0, 0.0, BoundaryCase::AllToI};
  if (li > lj) return {0.0, 1.0, BoundaryCase::AllToJ};
  return {0.5, 0.5, BoundaryCase::Interior};
}

double customer_cost(const MarketParams& p, double p_i, double p_j, const MeanFieldSplit& mu,
                     bool i_side) {
  const double strategic_mass = p.eps * p.alpha * (p_i + p_j);
  const double own_price = i_side ? p_i : p_j;
  const double own_share = i_side ? mu.mu_i : mu.mu_j;
  const double base = own_share * strategic_mass + p.d_bar - p.alpha * own_price;
  return own_price + p.omega * (base - p.h);
}

double demand(const MarketParams& p, const PriceGrid& grid, Action a_i, Action a_j) {
  assert(a_i.operates());
  const double p_i = grid.price(a_i.index());
  if (!a_j.operates()) {
    return clamp_pos(p.d_bar * (1.0 + p.eps) - p.alpha * (1.0 - p.eps) * p_i);
  }
  const double p_j = grid.price(a_j.index());
  const double mu_i = mean_field_split_price_only(a_i, a_j).mu_i;
  return clamp_pos(p.d_bar - p.alpha * p_i + p.eps * p.alpha * mu_i * (p_i + p_j));
}

double demand_general(const MarketParams& p, double p_i, std::optional<double> p_j) {
  if (!p_j.has_value()) {
    return p.d_bar * (1.0 + p.eps) - p.alpha * p_i;
  }
  if (!(p.omega > 0.0)) throw OmegaZero();
  const double diff = (p_i - *p_j) * qos_gamma(p);
  const double lim = 2.0 * (p_i + *p_j) * p.alpha * p.eps;
  if (diff > lim) return clamp_pos(p.d_bar - p.alpha * p_i);
  if (diff < -lim) return clamp_pos(p.d_bar - p.alpha * p_i + p.eps * p.alpha * (p_i + *p_j));
  return clamp_pos(p.d_bar - p.alpha * p_i + p.eps * p.alpha * (p_i + *p_j) - diff);
}

}  // namespace scgame

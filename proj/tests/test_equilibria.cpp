#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "scgame/equilibria.hpp"
#include "scgame/numeric.hpp"

using namespace scgame;

namespace {

MarketParams baseline_params() {
  MarketParams p;
  p.d_bar = 8.0;
  p.alpha = 0.5;
  p.eps = 0.8;
  p.c_m = 2.0;
  p.o_m = 2.0;
  p.c_s = 0.01;
  p.o_s = 0.01;
  return p;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool br_contains(const BestResponse& br, Action a) {
  return std::find(br.actions.begin(), br.actions.end(), a) != br.actions.end();
}

}  // namespace

TEST_SUITE_BEGIN("equilibria");

TEST_CASE("regime classification across supplier prices") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  CHECK(classify_regime(p, 1.0, grid) == RegimeLabel::Duopoly);
  CHECK(classify_regime(p, 200.0, grid) == RegimeLabel::CompleteChoking);
  CHECK(classify_regime(p, 11.0, grid) == RegimeLabel::PartialChoking);
  // every price past the relaxed monopoly choke is completely choking
  for (double bump : {0.1, 1.0, 10.0, 100.0}) {
    CHECK(classify_regime(p, monopoly_choke_price(p) + bump, grid) ==
          RegimeLabel::CompleteChoking);
  }
}

TEST_CASE("complete choking holds exactly when the monopoly grid optimum is negative") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  for (double q = 0.0; q <= 140.0; q += 0.7) {
    const bool choking = classify_regime(p, q, grid) == RegimeLabel::CompleteChoking;
    CHECK(choking == (monopoly_grid_optimum(p, q, grid).value < 0.0));
  }
}

TEST_CASE("complete choking leaves staying out as the only response") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const std::vector<Action> opponents = {Action::no_operate(), Action::price(0),
                                         Action::price(2), Action::price(15),
                                         Action::price(grid.max_index)};
  for (const Action opp : opponents) {
    const BestResponse br = best_response(p, 200.0, grid, opp);
    REQUIRE(br.actions.size() == 1);
    CHECK_FALSE(br.actions.front().operates());
  }
}

TEST_CASE("best response undercuts a high rival price") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const BestResponse br = best_response(p, 1.0, grid, Action::price(4));  // rival at 16
  CHECK(br_contains(br, Action::price(3)));  // undercut to 12
  CHECK(br.value == doctest::Approx(116.8));
  REQUIRE(br.within_candidate_set.has_value());
  CHECK(*br.within_candidate_set);
}

TEST_CASE("best response to a lone market is the monopoly optimum") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const BestResponse br = best_response(p, 1.0, grid, Action::no_operate());
  const GridOptimum mono = monopoly_grid_optimum(p, 1.0, grid);
  REQUIRE(br.actions.size() == 1);
  CHECK(br.actions.front() == Action::price(mono.index));
  CHECK_FALSE(br.within_candidate_set.has_value());
}

TEST_CASE("oracle finds exactly the two matched equilibria of the worked instance") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const EquilibriumSet ne = brute_force_nash(p, 1.0, grid);
  CHECK(ne.regime == RegimeLabel::Duopoly);
  CHECK(ne.symmetric == std::vector<long>{2, 3});  // prices 8 and 12
  CHECK(ne.asymmetric.empty());
  CHECK(ne.one_sided.empty());
  CHECK_FALSE(ne.shutdown_ne);
}

TEST_CASE("oracle in complete choking: shutdown only") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const EquilibriumSet ne = brute_force_nash(p, 200.0, grid);
  CHECK(ne.symmetric.empty());
  CHECK(ne.asymmetric.empty());
  CHECK(ne.one_sided.empty());
  CHECK(ne.shutdown_ne);
}

TEST_CASE("a fine denomination removes every operating equilibrium") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 0.1);
  const EquilibriumSet ne = brute_force_nash(p, 1.0, grid);
  CHECK(ne.symmetric.empty());
  CHECK(ne.asymmetric.empty());
}

TEST_CASE("oracle refuses an under-truncated grid") {
  const MarketParams p = baseline_params();
  PriceGrid grid{4.0, 10};
  CHECK_THROWS_AS(brute_force_nash(p, 1.0, grid), GridTooCoarse);
}

TEST_CASE("symmetric interval of the worked instance") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const SymmetricNeInterval iv = symmetric_ne_interval(p, 1.0, grid);
  CHECK(iv.lambda_s == doctest::Approx(8.3));
  CHECK(iv.lambda_s_under == doctest::Approx(7.7));
  CHECK(iv.rho_s == doctest::Approx(-44.0));
  CHECK(iv.lambda_e == doctest::Approx(2.0));
  CHECK(iv.rho_e == doctest::Approx(34.8));
  CHECK(iv.duopoly);
  // hand-evaluated endpoints
  CHECK(iv.s == doctest::Approx((8.3 - std::sqrt(51.29)) / 0.2).epsilon(1e-12));
  CHECK(iv.e == doctest::Approx((2.0 + std::sqrt(59.68)) / 0.8).epsilon(1e-12));
  CHECK(iv.s == doctest::Approx(5.69148).epsilon(1e-4));
  CHECK(iv.e == doctest::Approx(12.15656).epsilon(1e-4));
  REQUIRE(iv.nonempty);
  CHECK(predicted_symmetric_indices(iv) == std::vector<long>{2, 3});
}

TEST_CASE("an interval straddling no grid multiple is empty") {
  // near the matched choke price the zero-profit band narrows below one step
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const SymmetricNeInterval iv = symmetric_ne_interval(p, 69.0, grid);
  CHECK(iv.e - iv.s < grid.delta);
  CHECK_FALSE(iv.nonempty);
  CHECK(predicted_symmetric_indices(iv).empty());
  // and the oracle agrees there is no symmetric operating NE
  CHECK(brute_force_nash(p, 69.0, grid).symmetric.empty());
}

TEST_CASE("the undercut cap collapses to the effective cost as delta shrinks") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 0.001);
  const SymmetricNeInterval iv = symmetric_ne_interval(p, 1.0, grid);
  CHECK(iv.tilde_e == doctest::Approx(p.effective_cost(1.0)).epsilon(0.01));
  CHECK(iv.tilde_e < iv.s);
  CHECK_FALSE(iv.nonempty);
}

TEST_CASE("interval hypotheses are enforced") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  CHECK_THROWS_AS(symmetric_ne_interval(p, 200.0, grid), HypothesisViolated);
  CHECK_THROWS_AS(symmetric_ne_interval(p, 100.0, grid), HypothesisViolated);
}

TEST_CASE("matching-vs-undercutting gap, both evaluation paths") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const StepUtilityGap at3 = match_vs_undercut_gap(p, 1.0, grid, 3);
  CHECK(at3.direct == doctest::Approx(1.2));
  CHECK(at3.quadratic == doctest::Approx(1.2));
  CHECK(at3.clamp_free);
  const StepUtilityGap at4 = match_vs_undercut_gap(p, 1.0, grid, 4);
  CHECK(at4.direct == doctest::Approx(-35.6));
  CHECK(at4.quadratic == doctest::Approx(-35.6));
  const StepUtilityGap clamped = match_vs_undercut_gap(p, 1.0, grid, 21);  // price 84 > 80
  CHECK_FALSE(clamped.clamp_free);
}

TEST_CASE("gap paths agree on random clamp-free instances") {
  std::mt19937_64 rng(90317);
  int tested = 0;
  while (tested < 2000) {
    MarketParams p;
    p.d_bar = 1.0 + 19.0 * uniform01(rng);
    p.alpha = 0.05 + 2.0 * uniform01(rng);
    p.eps = 0.9 * uniform01(rng);
    p.c_m = 4.0 * uniform01(rng);
    p.o_m = 4.0 * uniform01(rng);
    p.c_s = 0.5 * uniform01(rng);
    p.o_s = 0.5 * uniform01(rng);
    if (!(p.a1_margin() > 0.0)) continue;
    const double support = p.d_bar / (p.alpha * (1.0 - p.eps));
    const PriceGrid grid{support / (2.0 + 60.0 * uniform01(rng)), 1};
    const long l = 1 + static_cast<long>(uniform01(rng) * (support / grid.delta - 1.0));
    if (l < 1 || grid.price(l) >= support) continue;
    const double q = 10.0 * uniform01(rng);
    const StepUtilityGap gap = match_vs_undercut_gap(p, q, grid, l);
    if (!gap.clamp_free) continue;
    const double tol =
        1e-9 * std::max({1.0, std::fabs(gap.direct), std::fabs(gap.quadratic)});
    CHECK(std::fabs(gap.direct - gap.quadratic) <= tol);
    ++tested;
  }
}

TEST_CASE("no asymmetric equilibrium in the worked instance") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const AsymmetricNe asym = asymmetric_ne(p, 1.0, grid);
  CHECK(asym.regime_allows);
  CHECK_FALSE(asym.threshold_met);  // high-price optimum 8 sits below the gap root
  CHECK_FALSE(asym.verified);
  CHECK(asym.profiles.empty());
}

TEST_CASE("no asymmetric equilibrium outside the duopoly regime") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  const AsymmetricNe asym = asymmetric_ne(p, 11.0, grid);
  CHECK_FALSE(asym.regime_allows);
  CHECK(asym.profiles.empty());
}

TEST_CASE("closed form matches the oracle on the worked instances") {
  const MarketParams p = baseline_params();
  const PriceGrid grid = PriceGrid::covering(p, 4.0);
  for (double q : {1.0, 5.0, 11.0, 69.0, 200.0}) {
    const ClosedFormEquilibria closed = closed_form_equilibria(p, q, grid);
    const EquilibriumSet oracle = brute_force_nash(p, q, grid);
    const NeComparison diff = compare_equilibria(p, q, grid, closed, oracle);
    CAPTURE(q);
    CHECK(diff.agrees());
  }
}

TEST_CASE("exact ties: the one place asymmetric equilibria appear") {
  // With no strategic customers the game decouples and each side simply
  // maximizes the high-price utility. Placing its vertex exactly midway
  // between two grid points makes {6, 7} a two-way argmax, so all four
  // combinations are weak equilibria.
  MarketParams p;
  p.d_bar = 10.0;
  p.alpha = 1.0;
  p.eps = 0.0;
  p.c_m = 0.0;
  p.o_m = 0.5;
  p.c_s = 0.1;
  p.o_s = 0.1;
  p = validate_params(p);
  const double q = 3.0;
  const PriceGrid grid = PriceGrid::covering(p, 1.0);

  const EquilibriumSet oracle = brute_force_nash(p, q, grid);
  CHECK(oracle.symmetric == std::vector<long>{6, 7});
  const std::vector<std::pair<long, long>> tied_pairs = {{6, 7}, {7, 6}};
  const bool asymmetric_ties_found = oracle.asymmetric == tied_pairs;
  CHECK(asymmetric_ties_found);

  // the tie sits exactly on both interval endpoints
  const SymmetricNeInterval iv = symmetric_ne_interval(p, q, grid);
  CHECK(iv.s == doctest::Approx(6.0));
  CHECK(iv.e == doctest::Approx(7.0));
  CHECK(predicted_symmetric_indices(iv) == std::vector<long>{6, 7});

  // the floor tie-break puts the high-price optimum at 6, so the tied pair
  // (7, 6) does not match the closed-form candidate shape; the comparison
  // classifies it as tie-degenerate instead of a disagreement
  CHECK(high_price_optimum(p, q, grid).index == 6);
  const ClosedFormEquilibria closed = closed_form_equilibria(p, q, grid);
  CHECK(closed.set.asymmetric.empty());
  const NeComparison diff = compare_equilibria(p, q, grid, closed, oracle);
  CHECK(diff.boundary_asymmetric.size() == 2);
  CHECK(diff.oracle_only_asymmetric.empty());
  CHECK(diff.agrees());
}

TEST_CASE("one-sided equilibria near the monopoly choke price") {
  // With a tiny strategic fraction and a supplier price just under the
  // monopoly choke, a lone manufacturer ekes out a profit at the monopoly
  // optimum while every response to it loses money: (14.3, NoOperate) is a
  // pure NE with its mirror, and nothing else is.
  MarketParams p;
  p.d_bar = 8.0;
  p.alpha = 0.5;
  p.eps = 0.01;
  p.c_m = 0.0;
  p.o_m = 2.0;
  p.c_s = 0.01;
  p.o_s = 0.01;
  p = validate_params(p);
  const double q = 12.29;
  REQUIRE(q < monopoly_choke_price(p));
  const PriceGrid grid = PriceGrid::covering(p, 0.1);

  const EquilibriumSet ne = brute_force_nash(p, q, grid);
  CHECK(ne.regime == RegimeLabel::PartialChoking);
  CHECK(ne.symmetric.empty());
  CHECK(ne.asymmetric.empty());
  CHECK_FALSE(ne.shutdown_ne);
  REQUIRE(ne.one_sided == std::vector<long>{143});
  CHECK(grid.price(143) == doctest::Approx(14.3));

  const BestResponse vs_out = best_response(p, q, grid, Action::no_operate());
  REQUIRE(vs_out.actions.size() == 1);
  CHECK(vs_out.actions.front() == Action::price(143));
  const BestResponse vs_lone = best_response(p, q, grid, Action::price(143));
  REQUIRE(vs_lone.actions.size() == 1);
  CHECK_FALSE(vs_lone.actions.front().operates());

  // the closed forms predict no operating NE here and the diff ignores the
  // one-sided bucket, so the comparison still agrees
  const ClosedFormEquilibria closed = closed_form_equilibria(p, q, grid);
  CHECK(closed.set.symmetric.empty());
  CHECK(compare_equilibria(p, q, grid, closed, ne).agrees());
}

TEST_CASE("in the duopoly regime the lower bound comes from the high-price test") {
  // The interval's lower endpoint is a max of the zero-profit bound and the
  // no-upward-deviation bound; in the duopoly regime the second always wins.
  std::mt19937_64 rng(74207);
  int dp_points = 0;
  while (dp_points < 300) {
    MarketParams p;
    p.d_bar = 2.0 + 16.0 * uniform01(rng);
    p.alpha = 0.05 + 2.0 * uniform01(rng);
    p.eps = 0.9 * uniform01(rng);
    p.c_m = 3.0 * uniform01(rng);
    p.o_m = 0.1 + 3.0 * uniform01(rng);
    if (!(p.a1_margin() > 0.0)) continue;
    const double support = PriceGrid::demand_support_bound(p);
    const PriceGrid grid = PriceGrid::covering(p, support / (5.0 + 120.0 * uniform01(rng)));
    const double q = uniform01(rng) * matched_choke_price(p);
    if (!(q >= 0.0)) continue;
    if (classify_regime(p, q, grid) != RegimeLabel::Duopoly) continue;
    const SymmetricNeInterval iv = symmetric_ne_interval(p, q, grid);
    REQUIRE(iv.duopoly);
    const double a = p.alpha * (1.0 - p.eps);
    const double dp_disc = iv.lambda_s * iv.lambda_s + 4.0 * a * iv.rho_s;
    REQUIRE(dp_disc >= -1e-9);
    const double dp_lo =
        -2.0 * iv.rho_s / (iv.lambda_s + std::sqrt(std::max(dp_disc, 0.0)));
    CHECK(iv.s == doctest::Approx(dp_lo).epsilon(1e-12));
    CHECK(dp_lo >= iv.tight_lo - 1e-9 * std::max(1.0, iv.tight_lo));
    ++dp_points;
  }
}

TEST_CASE("strict asymmetric equilibria cannot exist off the tie set") {
  // For the pair (high, high - step) to be an NE, the high side must prefer
  // its price to matching down, and the low side must prefer its price to
  // matching up. Writing both against the high-price utility gap G >= 0
  // leaves the incompatible bracket G >= k and G <= k - high*step*alpha*eps.
  std::mt19937_64 rng(61409);
  for (int trial = 0; trial < 4000; ++trial) {
    MarketParams p;
    p.d_bar = 2.0 + 16.0 * uniform01(rng);
    p.alpha = 0.05 + 2.0 * uniform01(rng);
    p.eps = 0.001 + 0.9 * uniform01(rng);
    p.c_m = 3.0 * uniform01(rng);
    p.o_m = 2.0 * uniform01(rng);
    if (!(p.a1_margin() > 0.0)) continue;
    const double support = PriceGrid::demand_support_bound(p);
    const PriceGrid grid{support / (5.0 + 80.0 * uniform01(rng)), 1};
    const double q = uniform01(rng) * matched_choke_price(p);
    if (!(q >= 0.0)) continue;
    const GridOptimum hi = high_price_optimum(p, q, grid);
    if (hi.value < 0.0 || hi.index < 1) continue;
    const double match_down = matched_price_utility(p, q, grid.price(hi.index - 1));
    const double match_up_gap = match_vs_undercut_gap(p, q, grid, hi.index).direct;
    // not both: high side weakly prefers staying AND low side weakly prefers
    // staying, outside exact ties
    const bool high_stays = hi.value > match_down + 1e-9;
    const bool low_stays = match_up_gap < -1e-9;
    const bool strict_asymmetric_candidate = high_stays && low_stays;
    CHECK_FALSE(strict_asymmetric_candidate);
  }
}

TEST_CASE("oracle agreement over random draws") {
  std::mt19937_64 rng(55100);
  int draws = 0;
  while (draws < 20) {
    MarketParams p;
    p.d_bar = 2.0 + 14.0 * uniform01(rng);
    p.alpha = 0.1 + 2.0 * uniform01(rng);
    p.eps = 0.9 * uniform01(rng);
    p.c_m = 3.0 * uniform01(rng);
    p.o_m = 0.2 + 3.0 * uniform01(rng);
    p.c_s = 0.5 * uniform01(rng);
    p.o_s = 0.5 * uniform01(rng);
    if (!(p.a1_margin() > 0.0)) continue;
    ++draws;
    const double support = PriceGrid::demand_support_bound(p);
    for (int point = 0; point < 10; ++point) {
      const double delta = support / (10.0 + 280.0 * uniform01(rng));
      const PriceGrid grid = PriceGrid::covering(p, delta);
      const double q = uniform01(rng) * (monopoly_choke_price(p) * 1.1);
      const ClosedFormEquilibria closed = closed_form_equilibria(p, q, grid);
      const EquilibriumSet oracle = brute_force_nash(p, q, grid);
      const NeComparison diff = compare_equilibria(p, q, grid, closed, oracle);
      CAPTURE(p.d_bar);
      CAPTURE(p.alpha);
      CAPTURE(p.eps);
      CAPTURE(delta);
      CAPTURE(q);
      CHECK(diff.agrees());
      if (oracle.regime == RegimeLabel::CompleteChoking) {
        CHECK(oracle.symmetric.empty());
        CHECK(oracle.asymmetric.empty());
        CHECK(oracle.shutdown_ne);
      }
      for (const auto& [a, b] : oracle.asymmetric) {
        const GridOptimum hi = high_price_optimum(p, q, grid);
        CHECK(std::max(a, b) == hi.index);
        CHECK(std::min(a, b) == hi.index - 1);
      }
    }
  }
}

TEST_CASE("shrinking the denomination kills the operating equilibria") {
  const MarketParams p = baseline_params();
  const MinDeltaReport report = min_delta_no_ne(p, 1.0, 4.0, 5);
  REQUIRE(report.trace.size() == 6);
  CHECK(report.trace[0].delta == doctest::Approx(4.0));
  CHECK(report.trace[0].operating == 2);  // matched prices 8 and 12
  CHECK(report.trace[1].operating == 2);  // delta 2: matched prices 6 and 8
  CHECK(report.trace[2].operating == 1);  // delta 1: matched price 6
  CHECK(report.trace[3].operating == 0);  // delta 0.5 and below: none
  CHECK(report.trace[4].operating == 0);
  CHECK(report.trace[5].operating == 0);
  REQUIRE(report.largest_no_ne_delta.has_value());
  CHECK(*report.largest_no_ne_delta == doctest::Approx(0.5));
}

TEST_CASE("choking prices have no operating equilibria at any denomination") {
  const MarketParams p = baseline_params();
  const MinDeltaReport report = min_delta_no_ne(p, 200.0, 4.0, 3);
  for (const auto& row : report.trace) CHECK(row.operating == 0);
  CHECK(*report.largest_no_ne_delta == doctest::Approx(4.0));
}

TEST_SUITE_END();

#include "modeq/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "modeq/errors.hpp"
#include "modeq/model.hpp"
#include "modeq/numerics.hpp"
#include "modeq/perfect.hpp"

namespace modeq {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Advertising: return "advertising";
    case Regime::Hybrid: return "hybrid";
    case Regime::Subscription: return "subscription";
  }
  return "unknown";
}

double hybrid_free_marginal(double y, const ModelParams& params) {
  return marginal_user_ad(y, params);
}

double hybrid_paid_marginal(double y, double p, const ModelParams& params) {
  // Paying beats the ad tier once delta * U(x) >= p.
  const double xh = hybrid_free_marginal(y, params);
  return std::clamp(marginal_user_sub(y, p / params.delta, params), xh, y);
}

double hybrid_profit(double y, double p, const ModelParams& params) {
  const double xh = hybrid_free_marginal(y, params);
  const double xs = hybrid_paid_marginal(y, p, params);
  return params.a * (xs - xh) + p * (y - xs);
}

namespace {

void validate_hybrid(const ModelParams& params) {
  validate(params);
  if (params.delta <= 0.0) throw Error(ErrorKind::DeltaZero, "hybrid model needs delta > 0");
  if (!(params.a > 0.0)) throw Error(ErrorKind::InvalidParams, "a must be > 0");
}

ModelParams ad_view(const ModelParams& params) {
  ModelParams p = params;
  p.zeta = params.a;
  return p;
}

}  // namespace

HybridEquilibrium solve_hybrid(const ModelParams& params) {
  validate_hybrid(params);
  const Equilibrium ad = solve_ad_perfect(ad_view(params));
  const double p_top = params.delta * (params.alpha + params.v) + 0.05;
  const Box2Max m = maximize_box2([&](double y, double p) { return hybrid_profit(y, p, params); },
                                  {0.0, 1.0, 0.0, p_top});

  HybridEquilibrium out;
  out.hybrid_profit = std::max(m.value, ad.objective);
  const double xh = hybrid_free_marginal(m.x, params);
  const double xs = hybrid_paid_marginal(m.x, m.y, params);
  if (m.x - xs > 1e-12 && m.value > ad.objective + kTol) {
    out.policy_y = m.x;
    out.price = m.y;
    out.free_segment = {xh, xs};
    out.paid_segment = {xs, m.x};
    out.profit = m.value;
    out.chosen_model = Regime::Hybrid;
  } else {
    out.policy_y = ad.policy_y;
    out.free_segment = {ad.x1, ad.policy_y};
    out.paid_segment = {ad.policy_y, ad.policy_y};
    out.profit = ad.objective;
    out.chosen_model = Regime::Advertising;
  }
  return out;
}

RegimeMap hybrid_model_map(const ModelParams& params, const std::vector<double>& a_grid,
                           const std::vector<double>& delta_grid, unsigned jobs) {
  for (std::size_t i = 1; i < a_grid.size(); ++i)
    if (a_grid[i] <= a_grid[i - 1]) throw Error(ErrorKind::InvalidGrid, "a grid must ascend");
  for (std::size_t i = 1; i < delta_grid.size(); ++i)
    if (delta_grid[i] <= delta_grid[i - 1])
      throw Error(ErrorKind::InvalidGrid, "delta grid must ascend");

  const double pi_sub = solve_sub_perfect(params).objective;
  RegimeMap map;
  map.cells.resize(a_grid.size() * delta_grid.size());
  auto solve_cell = [&](std::size_t idx) {
    const std::size_t di = idx / a_grid.size();
    const std::size_t ai = idx % a_grid.size();
    ModelParams p = params;
    p.a = a_grid[ai];
    p.delta = delta_grid[di];
    RegimeCell cell;
    cell.a = p.a;
    cell.delta = p.delta;
    cell.profit_sub = pi_sub;
    cell.profit_ad = solve_ad_perfect(ad_view(p)).objective;
    const HybridEquilibrium h = solve_hybrid(p);
    cell.profit_hybrid = h.hybrid_profit;
    const bool hybrid_best = h.chosen_model == Regime::Hybrid &&
                             h.profit > pi_sub + kTol && h.profit > cell.profit_ad + kTol;
    if (hybrid_best)
      cell.model = Regime::Hybrid;
    else if (cell.profit_ad > pi_sub)
      cell.model = Regime::Advertising;
    else
      cell.model = Regime::Subscription;
    map.cells[idx] = cell;
  };

  const std::size_t total = map.cells.size();
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < total; ++i) solve_cell(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < total; i += jobs) solve_cell(i);
      });
    for (auto& th : pool) th.join();
  }

  const double ad_unit = solve_ad_perfect(ad_view(params)).objective / params.a;
  map.a1 = pi_sub / ad_unit;
  for (std::size_t di = 0; di < delta_grid.size(); ++di) {
    std::optional<double> lo, hi;
    for (std::size_t ai = 0; ai < a_grid.size(); ++ai) {
      const RegimeCell& cell = map.cells[di * a_grid.size() + ai];
      if (cell.model != Regime::Hybrid) continue;
      if (!lo) lo = cell.a;
      hi = cell.a;
    }
    map.deltas.push_back(delta_grid[di]);
    map.a2.push_back(lo);
    map.a3.push_back(hi);
    if (lo && !map.delta_bar) map.delta_bar = delta_grid[di];
  }
  std::optional<double> prev_lo, prev_hi;
  for (std::size_t di = 0; di < map.deltas.size(); ++di) {
    if (!map.a2[di]) {
      if (prev_lo) map.band_monotone = false;
      continue;
    }
    if (prev_lo && (*map.a2[di] > *prev_lo || *map.a3[di] < *prev_hi)) map.band_monotone = false;
    prev_lo = map.a2[di];
    prev_hi = map.a3[di];
  }
  return map;
}

double boycott_profit(double y, const ModelParams& params) {
  const double x = marginal_user_ad(y, params);
  return (params.a_prime - params.beta * (x + y) / 2.0) * (y - x);
}

Equilibrium solve_ad_boycott(const ModelParams& params) {
  validate(params);
  if (!(params.a_prime > 0.0) || !(params.beta > 0.0))
    throw Error(ErrorKind::InvalidParams, "boycott needs a_prime > 0 and beta > 0");
  const double a = params.alpha, v = params.v, ap = params.a_prime, b = params.beta;
  const double edge = std::sqrt(2.0 * v);
  double y;
  if (a <= edge) {
    y = b <= ap / edge ? edge : ap / b;
  } else if (b <= ap * (std::sqrt(1.0 + a * a - 2.0 * v) - 1.0) / a) {
    y = 1.0;
  } else if (b <= ap * (1.0 / edge - 1.0 / a)) {
    y = ap * std::sqrt((a * a - 2.0 * v) / (a * b * (2.0 * ap + a * b)));
  } else if (b <= ap / edge) {
    y = edge;
  } else {
    y = ap / b;
  }
  y = std::min(y, 1.0);

  Equilibrium eq;
  const double profit = boycott_profit(y, params);
  if (profit <= 0.0) {
    eq.policy_y = 0.0;
    eq.moderated = true;
    eq.objective = 0.0;
    eq.x1 = 0.0;
    return eq;
  }
  eq.policy_y = y;
  eq.moderated = y < 1.0;
  eq.objective = profit;
  eq.x1 = marginal_user_ad(y, params);
  eq.user_base = UserBase({{eq.x1, y}});
  eq.avg_extremeness = 0.5 * (eq.x1 + y);
  return eq;
}

}  // namespace modeq

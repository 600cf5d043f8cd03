#include "modeq/imperfect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modeq/errors.hpp"
#include "modeq/model.hpp"
#include "modeq/numerics.hpp"
#include "modeq/perfect.hpp"

namespace modeq {

namespace {

constexpr double kOpen = 1e-9;

bool perfect(const ModelParams& p) { return p.k >= 0.5; }

double x2_at(double w, const ModelParams& p) {
  if (perfect(p)) return 1.0;
  const double k = p.k;
  const double r =
      p.alpha * p.alpha + 1.0 + (2.0 * p.c * (1.0 + 2.0 * k) - 4.0 * w) / (1.0 - 2.0 * k);
  return std::clamp(std::sqrt(std::max(r, 0.0)) - p.alpha, 0.0, 1.0);
}

double x1_at(double y, double w, const ModelParams& p) {
  const double k = p.k;
  const double top = std::max(y, x2_at(w, p));
  const double r = ((1.0 - 2.0 * k) * (2.0 * p.c + 1.0 - top * top) - 4.0 * w) / (1.0 + 2.0 * k);
  const double m = std::min(2.0 * p.alpha * y, r);
  double inner = y * y + m;
  // Cancellation residue would otherwise be amplified by the square root.
  if (inner <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(y * y, std::fabs(m)))
    return 0.0;
  const double root = std::sqrt(p.alpha * p.alpha + inner);
  return std::clamp(inner / (root + p.alpha), 0.0, y);
}

double yhat_at(double w, const ModelParams& p) {
  const double k = p.k;
  const double x2 = x2_at(w, p);
  const double r = (4.0 * w - (1.0 - 2.0 * k) * (2.0 * p.c + 1.0 - x2 * x2)) / (1.0 + 2.0 * k);
  return std::sqrt(std::max(0.0, r));
}

double base_measure(double y, double p, const ModelParams& params) {
  const double w = params.v - p;
  const double x2 = x2_at(w, params);
  const double x1 = x1_at(y, w, params);
  if (y < x2) return (y - x1) + (1.0 - x2);
  return 1.0 - x1;
}

void fill_statistics(Equilibrium& eq, double k) {
  if (eq.user_base.measure() > 0.0) {
    eq.avg_extremeness = avg_extremeness(eq.user_base, eq.policy_y, k);
  } else {
    eq.avg_extremeness = 0.0;
  }
  const PrunedMasses m = pruned_masses(eq.user_base, eq.policy_y, k);
  eq.pruned_extreme = m.m1;
  eq.pruned_moderate = m.m2;
}

Equilibrium unmoderated(double x1, double objective) {
  Equilibrium eq;
  eq.policy_y = 1.0;
  eq.moderated = false;
  eq.objective = objective;
  eq.x1 = x1;
  eq.x2 = 1.0;
  eq.user_base = UserBase({{x1, 1.0}});
  eq.avg_extremeness = 0.5 * (x1 + 1.0);
  return eq;
}

Equilibrium moderated_at(double y, double p, const ModelParams& params) {
  Equilibrium eq;
  eq.policy_y = y;
  eq.moderated = true;
  eq.x1 = x1k_sub(y, p, params);
  eq.x2 = x2k_sub(p, params);
  eq.user_base = imperfect_base(y, p, params);
  fill_statistics(eq, params.k);
  return eq;
}

}  // namespace

X2Result x2k_ad(const ModelParams& params) {
  X2Result r;
  r.k_bar = (params.alpha + 2.0 * params.v - params.c) / (2.0 * (params.alpha + params.c));
  r.x2 = params.k >= r.k_bar ? 1.0 : x2_at(params.v, params);
  return r;
}

double x1k_ad(double y, const ModelParams& params) { return x1_at(y, params.v, params); }
double x2k_sub(double p, const ModelParams& params) { return x2_at(params.v - p, params); }
double x1k_sub(double y, double p, const ModelParams& params) {
  return x1_at(y, params.v - p, params);
}
double yhat_k(double p, const ModelParams& params) { return yhat_at(params.v - p, params); }

UserBase imperfect_base(double y, double p, const ModelParams& params) {
  const double x2 = x2k_sub(p, params);
  const double x1 = x1k_sub(y, p, params);
  std::vector<Interval> segs;
  if (y >= x2) {
    if (x1 < 1.0) segs.push_back({x1, 1.0});
  } else {
    if (x1 < y) segs.push_back({x1, y});
    if (x2 < 1.0) segs.push_back({x2, 1.0});
  }
  return UserBase(std::move(segs));
}

Equilibrium solve_ad_imperfect(const ModelParams& params) {
  validate(params);
  const bool in_scope = params.alpha <= alpha_sub_threshold(params.v);
  if (perfect(params)) {
    Equilibrium eq = solve_ad_perfect(params);
    eq.in_scope = in_scope;
    return eq;
  }
  const double x2 = x2k_ad(params).x2;
  const double yh = yhat_k(0.0, params);
  // Among equal user bases the strictest policy wins.
  double best_y = std::min(x2, yh);
  double best_base = base_measure(best_y, 0.0, params);
  const double other = std::max(x2, yh);
  const double other_base = base_measure(other, 0.0, params);
  if (other_base > best_base + kTol) {
    best_y = other;
    best_base = other_base;
  }

  const double base0 = no_moderation_base(params.alpha, params.v);
  Equilibrium eq;
  if (best_base > base0 + kTol) {
    eq = moderated_at(best_y, 0.0, params);
    eq.objective = params.zeta * best_base;
  } else {
    eq = unmoderated(marginal_user_ad(1.0, params), params.zeta * base0);
  }
  eq.in_scope = in_scope;
  return eq;
}

double price_band_upper(const ModelParams& params) {
  const double k = params.k;
  return params.v + params.alpha * (0.5 - k) - params.c * (0.5 + k);
}

double price_band_lower(const ModelParams& params) {
  const double k = params.k, a = params.alpha, c = params.c;
  const double kp = 2.0 * k + 1.0;
  return params.v - 0.25 - c * (12.0 * k * k + 1.0) / (2.0 * kp) +
         2.0 * a * (1.0 - 2.0 * k) * k *
             std::sqrt(8.0 * c * k * kp + a * a * (1.0 - 2.0 * k) * (1.0 - 2.0 * k)) /
             (kp * kp) +
         0.5 * k * (1.0 - 4.0 * a * a * (1.0 - 8.0 * k / (kp * kp)));
}

std::vector<SubcaseResult> subscription_subcases(const ModelParams& params) {
  const double p1 = price_band_upper(params);
  const double p2 = price_band_lower(params);
  const double top = params.v + params.alpha + 1.0;
  const double k = params.k;

  struct Spec {
    const char* label;
    double lo, hi;
    std::function<double(double)> profit;
    std::function<double(double)> policy;
  };
  const auto& P = params;
  auto yhat_clean = [&](double p) {
    const double r = (4.0 * (P.v - p) - (1.0 - 2.0 * k) * 2.0 * P.c) / (1.0 + 2.0 * k);
    return std::sqrt(std::max(0.0, r));
  };
  const std::vector<Spec> specs = {
      {"1a", std::max(p1, 0.0) + kOpen, top,
       [&](double p) { return p * (1.0 - x1k_sub(1.0, p, P)); }, [](double) { return 1.0; }},
      {"1b", std::max(p1, 0.0) + kOpen, top, [&](double p) { return p * yhat_clean(p); },
       yhat_clean},
      {"2a", std::max(p2, 0.0) + kOpen, p1,
       [&](double p) { return p * (1.0 - x1k_sub(x2k_sub(p, P), p, P)); },
       [&](double p) { return x2k_sub(p, P); }},
      {"2b", std::max(p2, 0.0) + kOpen, p1,
       [&](double p) { return p * (yhat_k(p, P) + 1.0 - x2k_sub(p, P)); },
       [&](double p) { return yhat_k(p, P); }},
      {"3", kOpen, p2, [](double p) { return p; }, [&](double p) { return x2k_sub(p, P); }},
  };

  std::vector<SubcaseResult> out;
  for (const auto& s : specs) {
    SubcaseResult r;
    r.label = s.label;
    if (s.hi > s.lo) {
      const ScalarMax m = maximize_scalar({s.profit, s.lo, s.hi});
      r.price = m.arg;
      r.profit = std::max(m.value, 0.0);
      r.policy_y = s.policy(m.arg);
      r.feasible = true;
    }
    out.push_back(r);
  }
  return out;
}

Equilibrium solve_sub_imperfect(const ModelParams& params) {
  validate(params);
  const bool in_scope = params.alpha <= alpha_sub_threshold(params.v);
  if (perfect(params)) {
    Equilibrium eq = solve_sub_perfect(params);
    eq.in_scope = in_scope;
    return eq;
  }
  const auto cases = subscription_subcases(params);
  const SubcaseResult* best = nullptr;
  for (const auto& c : cases)
    if (c.feasible && (!best || c.profit > best->profit)) best = &c;

  const double p0 = no_moderation_price(params.alpha, params.v);
  const double pi0 = no_moderation_sub_profit(params.alpha, params.v);
  Equilibrium eq;
  if (best && best->profit > pi0 + kTol) {
    eq = moderated_at(best->policy_y, best->price, params);
    eq.objective = best->profit;
    eq.price = best->price;
  } else {
    eq = unmoderated(marginal_user_sub(1.0, p0, params), pi0);
    eq.price = p0;
  }
  eq.in_scope = in_scope;
  return eq;
}

std::vector<CurveRow> profit_curve_k(Revenue model, const ModelParams& params,
                                     const std::vector<double>& grid) {
  std::vector<CurveRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] > 0.5 || (i > 0 && grid[i] <= grid[i - 1]))
      throw Error(ErrorKind::InvalidGrid, "k grid must be ascending within [0, 1/2]");
    ModelParams p = params;
    p.k = grid[i];
    const Equilibrium eq = model == Revenue::Ad ? solve_ad_imperfect(p) : solve_sub_imperfect(p);
    rows.push_back({p.k, eq.policy_y, eq.objective, eq.avg_extremeness, eq.pruned_extreme,
                    eq.pruned_moderate, eq.moderated});
  }
  return rows;
}

OptimalK optimal_k(Revenue model, const ModelParams& params, const std::vector<double>& grid) {
  const auto rows = profit_curve_k(model, params, grid);
  if (rows.empty()) throw Error(ErrorKind::InvalidGrid, "empty k grid");
  OptimalK best{rows.front().k, rows.front().profit};
  double top = best.profit;
  for (const auto& r : rows) {
    // Indifference goes to the more accurate technology.
    if (r.profit >= top - 1e-9) best = {r.k, r.profit};
    top = std::max(top, r.profit);
  }
  return best;
}

std::vector<double> k_grid(double step) {
  if (!(step > 0.0) || step > 0.5) throw Error(ErrorKind::InvalidGrid, "k step must be in (0, 1/2]");
  const long n = std::lround(0.5 / step);
  if (std::fabs(n * step - 0.5) > 1e-9) throw Error(ErrorKind::InvalidGrid, "k step must divide 1/2");
  std::vector<double> g;
  for (long i = 0; i <= n; ++i) g.push_back(i == n ? 0.5 : static_cast<double>(i) * 0.5 / n);
  return g;
}

}  // namespace modeq

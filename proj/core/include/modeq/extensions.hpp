#pragma once

#include <optional>
#include <vector>

#include "modeq/types.hpp"

namespace modeq {

enum class Regime { Advertising, Hybrid, Subscription };
const char* to_string(Regime r);

struct HybridEquilibrium {
  double policy_y = 1.0;
  std::optional<double> price;
  Interval free_segment;
  Interval paid_segment;
  double profit = 0.0;
  // Best hybrid profit before the fallback to advertising.
  double hybrid_profit = 0.0;
  Regime chosen_model = Regime::Advertising;
};

double hybrid_free_marginal(double y, const ModelParams& params);
double hybrid_paid_marginal(double y, double p, const ModelParams& params);
double hybrid_profit(double y, double p, const ModelParams& params);

// Uses params.a as the value per user; throws DeltaZero at delta = 0.
HybridEquilibrium solve_hybrid(const ModelParams& params);

struct RegimeCell {
  double a = 0.0;
  double delta = 0.0;
  double profit_ad = 0.0;
  double profit_sub = 0.0;
  double profit_hybrid = 0.0;
  Regime model = Regime::Advertising;
};

struct RegimeMap {
  std::vector<RegimeCell> cells;  // delta-major, then a, both ascending
  std::optional<double> delta_bar;
  double a1 = 0.0;
  // Hybrid band edges per delta row; absent when the row has no hybrid cell.
  std::vector<double> deltas;
  std::vector<std::optional<double>> a2;
  std::vector<std::optional<double>> a3;
  bool band_monotone = true;
};

RegimeMap hybrid_model_map(const ModelParams& params, const std::vector<double>& a_grid,
                           const std::vector<double>& delta_grid, unsigned jobs = 1);

double boycott_profit(double y, const ModelParams& params);
// Closed-form policy; the returned objective is the boycott profit.
Equilibrium solve_ad_boycott(const ModelParams& params);

}  // namespace modeq

#pragma once

#include <string>
#include <vector>

#include "modeq/types.hpp"

namespace modeq {

struct X2Result {
  double x2 = 1.0;
  double k_bar = 0.0;
};

// Upper-segment marginal user. The subscription versions take the price p
// and reduce to the advertising ones at p = 0.
X2Result x2k_ad(const ModelParams& params);
double x1k_ad(double y, const ModelParams& params);
double x2k_sub(double p, const ModelParams& params);
double x1k_sub(double y, double p, const ModelParams& params);
// Strictest policy at which the most moderate user still participates.
double yhat_k(double p, const ModelParams& params);

// Participating set for policy y and price p under accuracy k.
UserBase imperfect_base(double y, double p, const ModelParams& params);

Equilibrium solve_ad_imperfect(const ModelParams& params);

struct SubcaseResult {
  std::string label;
  double price = 0.0;
  double policy_y = 0.0;
  double profit = 0.0;
  bool feasible = false;
};

double price_band_upper(const ModelParams& params);  // p_{1,k}
double price_band_lower(const ModelParams& params);  // p_{2,k}

std::vector<SubcaseResult> subscription_subcases(const ModelParams& params);
Equilibrium solve_sub_imperfect(const ModelParams& params);

enum class Revenue { Ad, Sub };

struct CurveRow {
  double k = 0.0;
  double y_star = 0.0;
  double profit = 0.0;
  double avg_extremeness = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  bool moderated = false;
};

std::vector<CurveRow> profit_curve_k(Revenue model, const ModelParams& params,
                                     const std::vector<double>& k_grid);

struct OptimalK {
  double k = 0.5;
  double profit = 0.0;
};
OptimalK optimal_k(Revenue model, const ModelParams& params,
                   const std::vector<double>& k_grid);

// {0, step, ..., 1/2} with exact endpoints.
std::vector<double> k_grid(double step = 0.01);

}  // namespace modeq

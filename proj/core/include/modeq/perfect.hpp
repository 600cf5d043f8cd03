#pragma once

#include <optional>

#include "modeq/types.hpp"

namespace modeq {

struct ThresholdSet {
  double alpha_A = 0.0;
  double alpha_S = 0.0;
  double alpha_P = 0.0;
  double alpha_1 = 0.0;
  double zeta_bar = 0.0;
  double zeta_hat = 0.0;
  std::optional<double> k_bar;
};

// Subscription price and profit when the platform does not moderate.
double no_moderation_price(double alpha, double v);
double no_moderation_sub_profit(double alpha, double v);
// User base without moderation.
double no_moderation_base(double alpha, double v);

Equilibrium solve_ad_perfect(const ModelParams& params);
Equilibrium solve_sub_perfect(const ModelParams& params);

double alpha_sub_threshold(double v, double tol = 1e-9);
double zeta_bar(double alpha, double v);
double zeta_hat(double alpha, double v);
double alpha_crossover(double v, double tol = 1e-9);

// Uses alpha, v and c from params; k_bar is filled in when c is admissible.
ThresholdSet thresholds(const ModelParams& params, double tol = 1e-9);

enum class RevenueModel { Advertising, Subscription };
const char* to_string(RevenueModel m);

struct RevenueChoice {
  RevenueModel model = RevenueModel::Advertising;
  double zeta_bar = 0.0;
  double zeta_hat = 0.0;
};

RevenueChoice revenue_model_choice(const ModelParams& params, bool allow_moderation);

}  // namespace modeq

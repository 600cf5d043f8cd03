#include "modeq/perfect.hpp"

#include <cmath>

#include "modeq/errors.hpp"
#include "modeq/model.hpp"
#include "modeq/numerics.hpp"
#include "modeq/planner.hpp"

namespace modeq {

double no_moderation_price(double alpha, double v) {
  const double a2 = alpha * alpha;
  return ((1.0 + alpha) * std::sqrt(2.0 * (2.0 - 3.0 * v + 2.0 * a2 + alpha)) -
          2.0 * (1.0 - 3.0 * v + a2 - alpha)) /
         9.0;
}

double no_moderation_sub_profit(double alpha, double v) {
  const double p = no_moderation_price(alpha, v);
  return p * (1.0 + alpha - std::sqrt(alpha * alpha + 1.0 - 2.0 * (v - p)));
}

double no_moderation_base(double alpha, double v) {
  return 1.0 + alpha - std::sqrt(alpha * alpha + 1.0 - 2.0 * v);
}

namespace {

Equilibrium single_segment(double x1, double y, double objective) {
  Equilibrium eq;
  eq.policy_y = y;
  eq.moderated = y < 1.0;
  eq.objective = objective;
  eq.x1 = x1;
  eq.x2 = 1.0;
  eq.user_base = UserBase({{x1, y}});
  eq.avg_extremeness = 0.5 * (x1 + y);
  return eq;
}

double moderated_sub_profit(double v) { return std::pow(2.0 * v / 3.0, 1.5); }

}  // namespace

Equilibrium solve_ad_perfect(const ModelParams& params) {
  validate(params);
  const double alpha_A = std::sqrt(2.0 * params.v);
  if (params.alpha < alpha_A) return single_segment(0.0, alpha_A, params.zeta * alpha_A);
  const double x1 = marginal_user_ad(1.0, params);
  return single_segment(x1, 1.0, params.zeta * (1.0 - x1));
}

Equilibrium solve_sub_perfect(const ModelParams& params) {
  validate(params);
  const double v = params.v;
  const double moderated = moderated_sub_profit(v);
  const double unmoderated = no_moderation_sub_profit(params.alpha, v);
  Equilibrium eq;
  if (moderated > unmoderated + kTol) {
    eq = single_segment(0.0, std::sqrt(2.0 * v / 3.0), moderated);
    eq.price = 2.0 * v / 3.0;
  } else {
    const double p = no_moderation_price(params.alpha, v);
    eq = single_segment(marginal_user_sub(1.0, p, params), 1.0, unmoderated);
    eq.price = p;
  }
  return eq;
}

double alpha_sub_threshold(double v, double tol) {
  if (!(v > 0.0 && v < 0.5)) throw Error(ErrorKind::BracketFailure, "v outside (0, 1/2)");
  const double target = moderated_sub_profit(v);
  try {
    return bisect([&](double a) { return no_moderation_sub_profit(a, v) - target; },
                  1e-9, std::sqrt(2.0 * v) - 1e-9, tol);
  } catch (const Error&) {
    throw Error(ErrorKind::BracketFailure, "subscription threshold not bracketed");
  }
}

double zeta_bar(double alpha, double v) {
  const double sub = std::max(moderated_sub_profit(v), no_moderation_sub_profit(alpha, v));
  const double alpha_A = std::sqrt(2.0 * v);
  const double ad_base = alpha < alpha_A ? alpha_A : no_moderation_base(alpha, v);
  return sub / ad_base;
}

double zeta_hat(double alpha, double v) {
  return no_moderation_sub_profit(alpha, v) / no_moderation_base(alpha, v);
}

double alpha_crossover(double v, double tol) {
  const double alpha_S = alpha_sub_threshold(v, tol);
  try {
    return bisect([&](double a) { return zeta_bar(a, v) - zeta_hat(a, v); }, 1e-9,
                  alpha_S - 1e-9, tol);
  } catch (const Error&) {
    throw Error(ErrorKind::BracketFailure, "revenue crossover not bracketed");
  }
}

ThresholdSet thresholds(const ModelParams& params, double tol) {
  const double v = params.v;
  if (!(v > 0.0 && v < 0.5)) throw Error(ErrorKind::InvalidParams, "v must satisfy 0 < v < 1/2");
  ThresholdSet t;
  t.alpha_A = std::sqrt(2.0 * v);
  t.alpha_S = alpha_sub_threshold(v, tol);
  t.alpha_P = alpha_planner_threshold(v, tol);
  t.alpha_1 = alpha_crossover(v, tol);
  t.zeta_bar = zeta_bar(params.alpha, v);
  t.zeta_hat = zeta_hat(params.alpha, v);
  if (params.c > v && params.c <= params.alpha + 2.0 * v + kTol)
    t.k_bar = (params.alpha + 2.0 * v - params.c) / (2.0 * (params.alpha + params.c));
  return t;
}

const char* to_string(RevenueModel m) {
  return m == RevenueModel::Advertising ? "advertising" : "subscription";
}

RevenueChoice revenue_model_choice(const ModelParams& params, bool allow_moderation) {
  validate(params);
  RevenueChoice r;
  r.zeta_bar = zeta_bar(params.alpha, params.v);
  r.zeta_hat = zeta_hat(params.alpha, params.v);
  const double cut = allow_moderation ? r.zeta_bar : r.zeta_hat;
  r.model = params.zeta > cut ? RevenueModel::Advertising : RevenueModel::Subscription;
  return r;
}

}  // namespace modeq

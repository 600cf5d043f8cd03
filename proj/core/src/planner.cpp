#include "modeq/planner.hpp"

#include <cmath>

#include "modeq/errors.hpp"
#include "modeq/imperfect.hpp"
#include "modeq/model.hpp"
#include "modeq/numerics.hpp"

namespace modeq {

namespace {

double antiderivative(double x, double y, double alpha, double v) {
  return alpha * x * x / 2.0 + (v - y * y / 2.0) * x + x * x * x / 6.0;
}

}  // namespace

double welfare_perfect(double y, const ModelParams& params) {
  const double x = marginal_user_ad(y, params);
  return antiderivative(y, y, params.alpha, params.v) -
         antiderivative(x, y, params.alpha, params.v);
}

double welfare_unmoderated(const ModelParams& params) { return welfare_perfect(1.0, params); }

double planner_interior_policy(double alpha, double v) {
  return 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0 * v));
}

double welfare_gain(double alpha, double v) {
  ModelParams p;
  p.alpha = alpha;
  p.v = v;
  return welfare_perfect(planner_interior_policy(alpha, v), p) - welfare_perfect(1.0, p);
}

double alpha_planner_threshold(double v, double tol) {
  if (!(v > 0.0 && v < 0.5)) throw Error(ErrorKind::BracketFailure, "v outside (0, 1/2)");
  try {
    return bisect([&](double a) { return welfare_gain(a, v); }, 0.0, std::sqrt(v / 2.0), tol);
  } catch (const Error&) {
    throw Error(ErrorKind::BracketFailure, "planner threshold not bracketed");
  }
}

WelfareOutcome solve_planner_perfect(const ModelParams& params) {
  validate(params);
  const double v = params.v;
  const double edge = std::sqrt(2.0 * v);
  WelfareOutcome out;
  out.alpha_P = alpha_planner_threshold(v);
  out.policy_y = 1.0;
  out.welfare = welfare_perfect(1.0, params);
  // W is concave below sqrt(2v) and convex above, so the optimum is the
  // stationary point or one of the two boundaries. Ties keep y = 1.
  std::vector<double> candidates = {edge};
  const double interior = planner_interior_policy(params.alpha, v);
  if (interior <= edge) candidates.push_back(interior);
  for (double y : candidates) {
    if (y >= 1.0) continue;
    const double w = welfare_perfect(y, params);
    if (w > out.welfare + kTol) {
      out.welfare = w;
      out.policy_y = y;
    }
  }
  out.moderated = out.policy_y < 1.0;
  out.x1 = marginal_user_ad(out.policy_y, params);
  out.contribution_at_cutoff = net_utility_contribution(out.policy_y, out.policy_y, params);
  return out;
}

double net_utility_contribution(double x, double y, const ModelParams& params) {
  const double xp = marginal_user_ad(y, params);
  return params.alpha * x + params.v - 0.5 * (y * y - x * x) - x * (x - xp);
}

double welfare_imperfect(double y, const ModelParams& params) {
  return total_utility(y, 0.0, imperfect_base(y, 0.0, params), params);
}

WelfareOutcome solve_planner_imperfect_at(const ModelParams& params) {
  validate(params);
  if (params.k >= 0.5) return solve_planner_perfect(params);
  WelfareOutcome out;
  out.alpha_P = alpha_planner_threshold(params.v);
  out.welfare = welfare_unmoderated(params);
  out.policy_y = 1.0;
  out.x1 = marginal_user_ad(1.0, params);
  const ScalarMax m = maximize_scalar({[&](double y) { return welfare_imperfect(y, params); }, 0.0, 1.0});
  if (m.value > out.welfare + kTol) {
    out.welfare = m.value;
    out.policy_y = m.arg;
    out.moderated = true;
    out.x1 = x1k_ad(m.arg, params);
  }
  out.contribution_at_cutoff = net_utility_contribution(out.policy_y, out.policy_y, params);
  return out;
}

std::vector<WelfareRow> solve_planner_imperfect(const ModelParams& params,
                                                const std::vector<double>& grid) {
  std::vector<WelfareRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] > 0.5 || (i > 0 && grid[i] <= grid[i - 1]))
      throw Error(ErrorKind::InvalidGrid, "k grid must be ascending within [0, 1/2]");
    ModelParams p = params;
    p.k = grid[i];
    const WelfareOutcome w = solve_planner_imperfect_at(p);
    rows.push_back({p.k, w.policy_y, w.welfare, w.moderated});
  }
  return rows;
}

}  // namespace modeq

#pragma once

#include <vector>

#include "modeq/types.hpp"

namespace modeq {

struct WelfareOutcome {
  double policy_y = 1.0;
  double welfare = 0.0;
  double alpha_P = 0.0;
  double contribution_at_cutoff = 0.0;
  double x1 = 0.0;
  bool moderated = false;
};

double welfare_perfect(double y, const ModelParams& params);
double welfare_unmoderated(const ModelParams& params);
double planner_interior_policy(double alpha, double v);
// W at the interior policy minus W at y = 1.
double welfare_gain(double alpha, double v);
double alpha_planner_threshold(double v, double tol = 1e-9);

WelfareOutcome solve_planner_perfect(const ModelParams& params);

// Own utility of the user at x minus the harm their content does to the
// participants below them.
double net_utility_contribution(double x, double y, const ModelParams& params);

double welfare_imperfect(double y, const ModelParams& params);
WelfareOutcome solve_planner_imperfect_at(const ModelParams& params);

struct WelfareRow {
  double k = 0.0;
  double y_star = 1.0;
  double welfare = 0.0;
  bool moderated = false;
};
std::vector<WelfareRow> solve_planner_imperfect(const ModelParams& params,
                                                const std::vector<double>& k_grid);

}  // namespace modeq

#pragma once

#include <functional>

namespace modeq {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

struct ScalarProblem {
  Fn1 objective;
  double lo = 0.0;
  double hi = 1.0;
  int grid_steps = 2000;
  int refine_iters = 60;
};

struct ScalarMax {
  double arg = 0.0;
  double value = 0.0;
};

struct Box2 {
  double xlo = 0.0, xhi = 1.0;
  double ylo = 0.0, yhi = 1.0;
};

struct Box2Max {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

// Root of a sign-changing function. Throws Error(NoBracket).
double bisect(const Fn1& f, double lo, double hi, double tol = 1e-9);

// Grid scan then golden-section refinement around the best cell.
// Ties go to the smaller argument.
ScalarMax maximize_scalar(const ScalarProblem& p);

// 2-D grid scan then nested golden-section refinement in a shrinking window.
// Ties go to the lexicographically smallest argument.
Box2Max maximize_box2(const Fn2& f, const Box2& box, int nx = 200, int ny = 200,
                      int passes = 3);

// Maximizes f on [lo, hi] by golden-section search (no grid).
ScalarMax golden_max(const Fn1& f, double lo, double hi, int iters);

}  // namespace modeq

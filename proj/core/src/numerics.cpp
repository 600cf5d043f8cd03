#include "modeq/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "modeq/errors.hpp"

namespace modeq {

double bisect(const Fn1& f, double lo, double hi, double tol) {
  if (!(tol > 0.0) || !(lo <= hi)) throw Error(ErrorKind::NoBracket, "bad bisection interval");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw Error(ErrorKind::NoBracket, "no sign change on interval");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ScalarMax golden_max(const Fn1& f, double lo, double hi, int iters) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  ScalarMax best{lo, f(lo)};
  for (double x : {x1, x2, hi}) {
    const double fx = x == x1 ? f1 : x == x2 ? f2 : f(x);
    if (fx > best.value) best = {x, fx};
  }
  return best;
}

ScalarMax maximize_scalar(const ScalarProblem& p) {
  const int n = std::max(p.grid_steps, 1);
  const double h = (p.hi - p.lo) / n;
  ScalarMax best{p.lo, p.objective(p.lo)};
  int best_i = 0;
  for (int i = 1; i <= n; ++i) {
    const double x = i == n ? p.hi : p.lo + h * i;
    const double fx = p.objective(x);
    if (fx > best.value) {
      best = {x, fx};
      best_i = i;
    }
  }
  if (p.refine_iters <= 0 || h <= 0.0) return best;
  const double a = p.lo + h * std::max(best_i - 1, 0);
  const double b = std::min(p.hi, p.lo + h * std::min(best_i + 1, n));
  const ScalarMax g = golden_max(p.objective, a, b, p.refine_iters);
  if (g.value > best.value) best = g;
  return best;
}

Box2Max maximize_box2(const Fn2& f, const Box2& box, int nx, int ny, int passes) {
  nx = std::max(nx, 1);
  ny = std::max(ny, 1);
  const double hx = (box.xhi - box.xlo) / nx;
  const double hy = (box.yhi - box.ylo) / ny;
  Box2Max best{box.xlo, box.ylo, f(box.xlo, box.ylo)};
  for (int i = 0; i <= nx; ++i) {
    const double x = i == nx ? box.xhi : box.xlo + hx * i;
    for (int j = 0; j <= ny; ++j) {
      const double y = j == ny ? box.yhi : box.ylo + hy * j;
      const double v = f(x, y);
      if (v > best.value) best = {x, y, v};
    }
  }

  // The objectives here can have kinked ridges on which coordinate ascent
  // stalls, so each pass maximizes the profile max_y f(x, y) over x.
  double wx = 2.0 * hx, wy = 2.0 * hy;
  for (int pass = 0; pass < passes; ++pass) {
    const double xa = std::max(box.xlo, best.x - wx), xb = std::min(box.xhi, best.x + wx);
    const double ya = std::max(box.ylo, best.y - wy), yb = std::min(box.yhi, best.y + wy);
    double arg_y = best.y;
    auto profile = [&](double x) {
      return golden_max([&](double y) { return f(x, y); }, ya, yb, 60).value;
    };
    const ScalarMax gx = golden_max(profile, xa, xb, 60);
    const ScalarMax gy = golden_max([&](double y) { return f(gx.arg, y); }, ya, yb, 60);
    arg_y = gy.arg;
    const double v = f(gx.arg, arg_y);
    if (v > best.value) best = {gx.arg, arg_y, v};
    wx *= 0.25;
    wy *= 0.25;
  }
  return best;
}

}  // namespace modeq

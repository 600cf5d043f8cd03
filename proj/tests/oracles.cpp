#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

namespace {

Max1 golden(const std::function<double(double)>& f, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 80; ++i) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - r * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + r * (b - a); fd = f(d);
    }
  }
  return fc >= fd ? Max1{c, fc} : Max1{d, fd};
}

}  // namespace

Max1 grid_max(const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = lo + (hi - lo) * i / n;
    fs[i] = f(xs[i]);
  }
  Max1 best{xs[0], fs[0]};
  for (int i = 0; i <= n; ++i)
    if (fs[i] > best.f) best = {xs[i], fs[i]};
  // Polish every grid-local maximum, not just the best one.
  for (int i = 0; i <= n; ++i) {
    const bool left = i == 0 || fs[i] >= fs[i - 1];
    const bool right = i == n || fs[i] >= fs[i + 1];
    if (!(left && right)) continue;
    const Max1 g = golden(f, xs[std::max(i - 1, 0)], xs[std::min(i + 1, n)]);
    if (g.f > best.f) best = g;
  }
  return best;
}

Max2 grid_max2(const std::function<double(double, double)>& f, double xlo, double xhi,
               double ylo, double yhi, int nx, int ny) {
  // Profile over x of the 1-D oracle in y.
  auto profile = [&](double x) { return grid_max([&](double y) { return f(x, y); }, ylo, yhi, ny).f; };
  const Max1 mx = grid_max(profile, xlo, xhi, nx);
  const Max1 my = grid_max([&](double y) { return f(mx.x, y); }, ylo, yhi, ny);
  return {mx.x, my.x, my.f};
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle

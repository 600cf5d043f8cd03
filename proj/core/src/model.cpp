#include "modeq/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "modeq/errors.hpp"

namespace modeq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::EmptyBase: return "EmptyBase";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::DeltaZero: return "DeltaZero";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::UnknownFigure: return "UnknownFigure";
  }
  return "Unknown";
}

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw Error(ErrorKind::InvalidParams, msg);
}

}  // namespace

void validate(const ModelParams& p) {
  auto finite = [](double x) { return std::isfinite(x); };
  require(finite(p.alpha) && finite(p.v) && finite(p.c) && finite(p.zeta) &&
              finite(p.k) && finite(p.delta) && finite(p.a) &&
              finite(p.a_prime) && finite(p.beta),
          "parameters must be finite");
  require(p.alpha >= 0.0, "alpha must be >= 0");
  require(p.v > 0.0 && p.v < 0.5, "v must satisfy 0 < v < 1/2");
  require(p.c > p.v, "c must exceed v");
  require(p.c <= p.alpha + 2.0 * p.v + kTol, "c must not exceed alpha + 2v");
  require(p.k >= 0.0 && p.k <= 0.5, "k must lie in [0, 1/2]");
  require(p.delta >= 0.0 && p.delta <= 1.0, "delta must lie in [0, 1]");
  require(p.zeta > 0.0, "zeta must be > 0");
}

UserBase::UserBase(std::vector<Interval> segments) {
  std::sort(segments.begin(), segments.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& s : segments) {
    if (!(s.lo <= s.hi) || s.lo < -kTol || s.hi > 1.0 + kTol)
      throw Error(ErrorKind::InvalidParams, "user base segment outside [0,1]");
    if (!segments_.empty() && s.lo < segments_.back().hi - kTol)
      throw Error(ErrorKind::InvalidParams, "user base segments overlap");
    segments_.push_back(s);
  }
}

double UserBase::measure() const {
  double m = 0.0;
  for (const auto& s : segments_) m += s.length();
  return m;
}

void check_invariants(const Equilibrium& eq) {
  require(eq.policy_y >= -kTol && eq.policy_y <= 1.0 + kTol, "policy outside [0,1]");
  require(eq.x1 <= eq.policy_y + 1e-9, "x1 exceeds policy");
  require(eq.x2 >= eq.policy_y - 1e-9 || eq.x2 >= 1.0 - kTol ||
              eq.user_base.segments().size() <= 1,
          "x2 below policy");
  const double m = eq.user_base.measure();
  require(m >= -kTol && m <= 1.0 + kTol, "user base measure outside [0,1]");
  if (m > 0.0)
    require(eq.avg_extremeness >= eq.x1 - 1e-9 && eq.avg_extremeness <= 1.0 + 1e-9,
            "average extremeness outside [x1,1]");
  require(eq.pruned_extreme >= -kTol && eq.pruned_moderate >= -kTol,
          "negative pruned mass");
}

double weighted_content(double a, double b, double y, double k) {
  if (b <= a) return 0.0;
  double total = 0.0;
  const double mid = std::clamp(y, a, b);
  total += (0.5 + k) * (mid * mid - a * a) / 2.0;
  total += (0.5 - k) * (b * b - mid * mid) / 2.0;
  return total;
}

namespace {

double content_above(double x, const UserBase& base, double y, double k) {
  double total = 0.0;
  for (const auto& s : base.segments()) {
    if (s.hi <= x) continue;
    total += weighted_content(std::max(s.lo, x), s.hi, y, k);
  }
  return total;
}

double clipped_root(double y, double w, double alpha) {
  // Solves x^2 + 2 alpha x + 2 w - y^2 = 0 on [0, y].
  if (y * y - 2.0 * w < 0.0) return 0.0;
  const double x = -alpha + std::sqrt(alpha * alpha + y * y - 2.0 * w);
  return std::clamp(x, 0.0, y);
}

}  // namespace

double utility(double x, double y, double p, const UserBase& base,
               const ModelParams& params) {
  const double s = survival(x, y, params.k);
  return params.alpha * x * s - params.c * (1.0 - s) + params.v -
         content_above(x, base, y, params.k) - p;
}

double marginal_user_ad(double y, const ModelParams& params) {
  return clipped_root(y, params.v, params.alpha);
}

double marginal_user_sub(double y, double p, const ModelParams& params) {
  return clipped_root(y, params.v - p, params.alpha);
}

UserBase fixed_point_participation(double y, double p, const ModelParams& params,
                                   std::size_t n_users) {
  if (n_users < 100) throw Error(ErrorKind::InvalidParams, "n_users must be >= 100");
  const std::size_t n = n_users;
  const double h = 1.0 / static_cast<double>(n);
  const double k = params.k;
  std::vector<char> in(n, 1);

  // U(x) depends only on participants more extreme than x, so a sweep from the
  // top settles every atom given the atoms above it. Further passes confirm.
  std::size_t passes = 0;
  bool changed = true;
  while (changed) {
    if (++passes > n + 10)
      throw Error(ErrorKind::NonConvergence, "participation iteration did not settle");
    changed = false;
    double above = 0.0;
    for (std::size_t j = n; j-- > 0;) {
      const double lo = static_cast<double>(j) * h;
      const double hi = static_cast<double>(j + 1) * h;
      const double m = lo + 0.5 * h;
      const double s = survival(m, y, k);
      const double u = params.alpha * m * s - params.c * (1.0 - s) + params.v -
                       above - weighted_content(m, hi, y, k) - p;
      const char keep = u >= -kTol ? 1 : 0;
      if (keep != in[j]) {
        in[j] = keep;
        changed = true;
      }
      if (keep) above += weighted_content(lo, hi, y, k);
    }
  }

  std::vector<Interval> segs;
  std::size_t j = 0;
  while (j < n) {
    if (!in[j]) {
      ++j;
      continue;
    }
    std::size_t e = j;
    while (e < n && in[e]) ++e;
    segs.push_back({static_cast<double>(j) * h, static_cast<double>(e) * h});
    j = e;
  }
  return UserBase(std::move(segs));
}

double avg_extremeness(const UserBase& base, double y, double k) {
  if (base.measure() <= 0.0)
    throw Error(ErrorKind::EmptyBase, "average extremeness of an empty user base");
  double num = 0.0;
  double den = 0.0;
  for (const auto& s : base.segments()) {
    num += weighted_content(s.lo, s.hi, y, k);
    const double mid = std::clamp(y, s.lo, s.hi);
    den += (0.5 + k) * (mid - s.lo) + (0.5 - k) * (s.hi - mid);
  }
  if (den <= 0.0) {
    // Everything participating is removed with certainty; report the plain mean.
    for (const auto& s : base.segments()) num += (s.hi * s.hi - s.lo * s.lo) / 2.0;
    return num / base.measure();
  }
  return num / den;
}

PrunedMasses pruned_masses(const UserBase& base, double y, double k) {
  double below = 0.0;
  double above = 0.0;
  for (const auto& s : base.segments()) {
    const double mid = std::clamp(y, s.lo, s.hi);
    below += mid - s.lo;
    above += s.hi - mid;
  }
  return {(0.5 + k) * above, (0.5 - k) * below};
}

double total_utility(double y, double p, const UserBase& base,
                     const ModelParams& params) {
  const double k = params.k;
  std::vector<Interval> pieces;
  for (const auto& s : base.segments()) {
    if (s.lo < y && y < s.hi) {
      pieces.push_back({s.lo, y});
      pieces.push_back({y, s.hi});
    } else {
      pieces.push_back(s);
    }
  }
  double total = 0.0;
  double above = 0.0;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    const double a = it->lo;
    const double b = it->hi;
    if (b <= a) continue;
    const double sv = b <= y ? 0.5 + k : 0.5 - k;
    total += params.alpha * sv * (b * b - a * a) / 2.0 +
             (params.v - p - params.c * (1.0 - sv) - above - sv * b * b / 2.0) * (b - a) +
             sv * (b * b * b - a * a * a) / 6.0;
    above += sv * (b * b - a * a) / 2.0;
  }
  return total;
}

}  // namespace modeq

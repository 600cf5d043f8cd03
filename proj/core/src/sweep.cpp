#include "modeq/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "modeq/errors.hpp"
#include "modeq/imperfect.hpp"
#include "modeq/model.hpp"
#include "modeq/perfect.hpp"
#include "modeq/planner.hpp"

namespace modeq {

SweepModel parse_sweep_model(const std::string& name) {
  if (name == "ad") return SweepModel::Ad;
  if (name == "sub") return SweepModel::Sub;
  if (name == "planner") return SweepModel::Planner;
  throw Error(ErrorKind::InvalidParams, "unknown sweep model: " + name);
}

const char* to_string(SweepModel m) {
  switch (m) {
    case SweepModel::Ad: return "ad";
    case SweepModel::Sub: return "sub";
    case SweepModel::Planner: return "planner";
  }
  return "unknown";
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "alpha", "v", "c", "k", "y_star", "price", "objective", "x1", "x2", "user_base",
      "avg_extremeness", "pruned_extreme", "pruned_moderate", "moderated", "regime"};
  return cols;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string format_row(const SweepRow& r) {
  std::string s;
  for (double x : {r.alpha, r.v, r.c, r.k, r.y_star}) s += format_number(x) + ",";
  s += (r.price ? format_number(*r.price) : std::string("NA")) + ",";
  for (double x : {r.objective, r.x1, r.x2, r.user_base, r.avg_extremeness, r.pruned_extreme,
                   r.pruned_moderate})
    s += format_number(x) + ",";
  s += r.moderated ? "true," : "false,";
  s += r.in_scope ? "in_scope" : "out_of_scope";
  return s;
}

namespace {

SweepRow from_equilibrium(const ModelParams& p, const Equilibrium& eq) {
  check_invariants(eq);
  SweepRow r;
  r.alpha = p.alpha;
  r.v = p.v;
  r.c = p.c;
  r.k = p.k;
  r.y_star = eq.policy_y;
  r.price = eq.price;
  r.objective = eq.objective;
  r.x1 = eq.x1;
  r.x2 = eq.x2;
  r.user_base = eq.user_base.measure();
  r.avg_extremeness = eq.avg_extremeness;
  r.pruned_extreme = eq.pruned_extreme;
  r.pruned_moderate = eq.pruned_moderate;
  r.moderated = eq.moderated;
  r.in_scope = eq.in_scope;
  return r;
}

Equilibrium planner_equilibrium(const ModelParams& p) {
  const WelfareOutcome w = solve_planner_imperfect_at(p);
  Equilibrium eq;
  eq.policy_y = w.policy_y;
  eq.moderated = w.moderated;
  eq.objective = w.welfare;
  if (!w.moderated) {
    eq.x1 = marginal_user_ad(1.0, p);
    eq.user_base = UserBase({{eq.x1, 1.0}});
    eq.avg_extremeness = 0.5 * (eq.x1 + 1.0);
  } else if (p.k >= 0.5) {
    eq.x1 = w.x1;
    eq.user_base = UserBase({{eq.x1, w.policy_y}});
    eq.avg_extremeness = 0.5 * (eq.x1 + w.policy_y);
  } else {
    eq.x1 = x1k_ad(w.policy_y, p);
    eq.x2 = x2k_ad(p).x2;
    eq.user_base = imperfect_base(w.policy_y, 0.0, p);
    if (eq.user_base.measure() > 0.0)
      eq.avg_extremeness = avg_extremeness(eq.user_base, eq.policy_y, p.k);
    const PrunedMasses m = pruned_masses(eq.user_base, eq.policy_y, p.k);
    eq.pruned_extreme = m.m1;
    eq.pruned_moderate = m.m2;
  }
  eq.in_scope = p.alpha <= alpha_sub_threshold(p.v);
  return eq;
}

std::vector<double> steps(double lo, double hi, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidGrid, "grid step must be positive");
  const double n = (hi - lo) / step;
  const long count = std::lround(n);
  if (std::fabs(n - count) > 1e-9) throw Error(ErrorKind::InvalidGrid, "grid step must divide the range");
  std::vector<double> g;
  for (long i = 0; i <= count; ++i) {
    // Round to the step's decimal resolution so printed values are clean.
    g.push_back(std::round((lo + i * step) * 1e12) / 1e12);
  }
  return g;
}

}  // namespace

SweepRow solve_row(SweepModel model, const ModelParams& params) {
  switch (model) {
    case SweepModel::Ad: {
      SweepRow r = from_equilibrium(params, solve_ad_imperfect(params));
      r.price.reset();
      return r;
    }
    case SweepModel::Sub:
      return from_equilibrium(params, solve_sub_imperfect(params));
    case SweepModel::Planner:
      return from_equilibrium(params, planner_equilibrium(params));
  }
  throw Error(ErrorKind::InvalidParams, "unknown sweep model");
}

SweepResult compute_sweep(const SweepConfig& cfg) {
  const double s = cfg.param_step;
  const auto alphas = cfg.alphas.empty() ? steps(0.0, 1.0, s) : cfg.alphas;
  const auto vs = cfg.vs.empty() ? steps(s, 0.5 - s, s) : cfg.vs;
  const auto cs = cfg.cs.empty() ? steps(0.0, 2.0, s) : cfg.cs;
  const auto ks = cfg.ks.empty() ? k_grid(cfg.k_step) : cfg.ks;
  for (const auto* g : {&alphas, &vs, &cs, &ks})
    for (std::size_t i = 1; i < g->size(); ++i)
      if ((*g)[i] <= (*g)[i - 1]) throw Error(ErrorKind::InvalidGrid, "grids must ascend");

  SweepResult res;
  std::vector<ModelParams> tuples;
  for (double a : alphas)
    for (double v : vs) {
      if (!(v > 0.0 && v < 0.5)) throw Error(ErrorKind::InvalidGrid, "v grid outside (0, 1/2)");
      const double alpha_S = alpha_sub_threshold(v);
      for (double c : cs) {
        if (!(c > v + 1e-12 && c <= a + 2.0 * v + 1e-10)) continue;
        if (a > alpha_S) {
          res.excluded.push_back({a, v, c, alpha_S});
          continue;
        }
        for (double k : ks) {
          ModelParams p;
          p.alpha = a;
          p.v = v;
          p.c = c;
          p.k = k;
          p.zeta = 1.0;
          tuples.push_back(p);
        }
      }
    }

  res.rows.resize(tuples.size());
  const unsigned jobs = std::max(1u, cfg.jobs);
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < tuples.size(); i += jobs) {
      res.rows[i] = solve_row(cfg.model, tuples[i]);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return res;
}

std::string excluded_path(const std::string& out_path) {
  const auto slash = out_path.find_last_of('/');
  const auto dot = out_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path + "_excluded";
  return out_path.substr(0, dot) + "_excluded" + out_path.substr(dot);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
  f << text;
  f.flush();
  if (!f) throw Error(ErrorKind::IoFailure, "failed writing " + path);
}

std::size_t run_sweep(const SweepConfig& cfg) {
  if (cfg.out_path.empty()) throw Error(ErrorKind::IoFailure, "no output path");
  const SweepResult res = compute_sweep(cfg);
  std::string out;
  const auto& cols = sweep_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& r : res.rows) out += format_row(r) + "\n";
  write_text(cfg.out_path, out);

  std::string ex = "alpha,v,c,alpha_S\n";
  for (const auto& e : res.excluded) {
    for (std::size_t i = 0; i < e.size(); ++i) ex += (i ? "," : "") + format_number(e[i]);
    ex += "\n";
  }
  write_text(excluded_path(cfg.out_path), ex);
  return res.rows.size();
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"zeta_vs_alpha",  "pi_k_ad",
                                                  "pi_k_sub",       "ysk_xbar_vs_k",
                                                  "m1_m2_xbar_vs_k", "welfare_vs_k"};
  return names;
}

ModelParams figure_defaults(const std::string& name) {
  ModelParams p;
  p.alpha = 0.2;
  p.v = 0.25;
  p.c = 0.3;
  p.zeta = 0.1;
  if (name == "zeta_vs_alpha") {
    p.alpha = 0.0;
  } else if (name == "ysk_xbar_vs_k") {
    p.alpha = 0.0;
    p.c = 0.5;
  } else if (name == "m1_m2_xbar_vs_k") {
    p.alpha = 0.05;
    p.v = 0.2;
    p.c = 0.25;
  } else if (std::find(figure_names().begin(), figure_names().end(), name) ==
             figure_names().end()) {
    throw Error(ErrorKind::UnknownFigure, "unknown figure: " + name);
  }
  return p;
}

std::string figure_data(const std::string& name, const ModelParams& params) {
  figure_defaults(name);
  std::ostringstream out;
  const auto ks = k_grid(0.01);
  auto line = [&](std::initializer_list<double> xs) {
    bool first = true;
    for (double x : xs) {
      out << (first ? "" : ",") << format_number(x);
      first = false;
    }
    out << "\n";
  };
  if (name == "zeta_vs_alpha") {
    if (!(params.v > 0.0 && params.v < 0.5))
      throw Error(ErrorKind::InvalidParams, "v must satisfy 0 < v < 1/2");
    out << "alpha,zeta_bar,zeta_hat\n";
    const double top = std::sqrt(2.0 * params.v);
    for (int i = 0; i * 0.01 < top; ++i) {
      const double a = i * 0.01;
      line({a, zeta_bar(a, params.v), zeta_hat(a, params.v)});
    }
  } else if (name == "pi_k_ad" || name == "pi_k_sub" || name == "ysk_xbar_vs_k") {
    const Revenue m = name == "pi_k_ad" ? Revenue::Ad : Revenue::Sub;
    if (name == "ysk_xbar_vs_k") {
      out << "k,y_star,avg_extremeness\n";
      for (const auto& r : profit_curve_k(m, params, ks)) line({r.k, r.y_star, r.avg_extremeness});
    } else {
      out << "k,y_star,profit\n";
      for (const auto& r : profit_curve_k(m, params, ks)) line({r.k, r.y_star, r.profit});
    }
  } else if (name == "m1_m2_xbar_vs_k") {
    out << "k,m1,m2,avg_extremeness\n";
    for (const auto& r : profit_curve_k(Revenue::Ad, params, ks))
      line({r.k, r.m1, r.m2, r.avg_extremeness});
  } else {
    out << "k,y_star,welfare\n";
    for (const auto& r : solve_planner_imperfect(params, ks)) line({r.k, r.y_star, r.welfare});
  }
  return out.str();
}

}  // namespace modeq

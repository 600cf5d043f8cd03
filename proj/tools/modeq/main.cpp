// Command-line front end: solve, thresholds, sweep, figure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "modeq/errors.hpp"
#include "modeq/extensions.hpp"
#include "modeq/imperfect.hpp"
#include "modeq/perfect.hpp"
#include "modeq/planner.hpp"
#include "modeq/sweep.hpp"

namespace {

constexpr int kExitParams = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

using Config = std::map<std::string, std::string>;

Config read_config(const std::string& path) {
  Config cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw modeq::Error(modeq::ErrorKind::IoFailure, "cannot read config " + path);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw modeq::Error(modeq::ErrorKind::InvalidParams,
                         path + ":" + std::to_string(n) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    for (auto& ch : key)
      if (ch == '-') ch = '_';
    cfg[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

double to_double(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw modeq::Error(modeq::ErrorKind::InvalidParams, "config value for " + key + " is not a number");
}

// Flag value, else config value, else nothing.
struct Resolver {
  const Config& cfg;
  std::optional<double> get(const std::string& key, const std::optional<double>& flag) const {
    if (flag) return flag;
    const auto it = cfg.find(key);
    if (it == cfg.end()) return std::nullopt;
    return to_double(key, it->second);
  }
  std::optional<std::string> get_str(const std::string& key,
                                     const std::optional<std::string>& flag) const {
    if (flag) return flag;
    const auto it = cfg.find(key);
    if (it == cfg.end()) return std::nullopt;
    return it->second;
  }
};

struct ParamFlags {
  std::optional<double> alpha, v, c, k, zeta, delta, a, a_prime, beta;

  void attach(CLI::App* app) {
    app->add_option("--alpha", alpha, "posting-utility slope");
    app->add_option("--v", v, "maximum reading utility");
    app->add_option("--c", c, "pruning cost (default v + (alpha + v)/2)");
    app->add_option("--k", k, "technology accuracy in [0, 1/2]");
    app->add_option("--zeta", zeta, "advertising value per user");
    app->add_option("--delta", delta, "ad-aversion discount (hybrid)");
    app->add_option("--a", a, "advertising value per user (hybrid)");
    app->add_option("--a-prime", a_prime, "boycott intercept");
    app->add_option("--beta", beta, "boycott slope");
  }

  modeq::ModelParams resolve(const Resolver& r, modeq::ModelParams p, bool derive_c = true) const {
    auto set = [&](const char* key, const std::optional<double>& flag, double& out) {
      if (auto x = r.get(key, flag)) out = *x;
    };
    set("alpha", alpha, p.alpha);
    set("v", v, p.v);
    set("k", k, p.k);
    set("zeta", zeta, p.zeta);
    set("delta", delta, p.delta);
    set("a", a, p.a);
    set("a_prime", a_prime, p.a_prime);
    set("beta", beta, p.beta);
    if (auto x = r.get("c", c))
      p.c = *x;
    else if (derive_c)
      p.c = p.v + (p.alpha + p.v) / 2.0;
    return p;
  }
};

std::string num(double x) { return modeq::format_number(x); }

void print_equilibrium(const modeq::Equilibrium& eq, const char* objective_name) {
  std::cout << "y_star=" << num(eq.policy_y) << "\n";
  std::cout << "price=" << (eq.price ? num(*eq.price) : "NA") << "\n";
  std::cout << objective_name << "=" << num(eq.objective) << "\n";
  std::cout << "x1=" << num(eq.x1) << "\n";
  std::cout << "x2=" << num(eq.x2) << "\n";
  std::cout << "user_base=" << num(eq.user_base.measure()) << "\n";
  std::cout << "segments=";
  bool first = true;
  for (const auto& s : eq.user_base.segments()) {
    std::cout << (first ? "" : ";") << "[" << num(s.lo) << "," << num(s.hi) << "]";
    first = false;
  }
  std::cout << "\n";
  std::cout << "avg_extremeness=" << num(eq.avg_extremeness) << "\n";
  std::cout << "pruned_extreme=" << num(eq.pruned_extreme) << "\n";
  std::cout << "pruned_moderate=" << num(eq.pruned_moderate) << "\n";
  std::cout << "moderated=" << (eq.moderated ? "true" : "false") << "\n";
  std::cout << "regime=" << (eq.in_scope ? "in_scope" : "out_of_scope") << "\n";
}

int run_solve(const std::string& model, const modeq::ModelParams& p) {
  modeq::validate(p);
  std::cout << "model=" << model << "\n";
  if (model == "ad") {
    print_equilibrium(modeq::solve_ad_imperfect(p), "profit");
  } else if (model == "sub") {
    print_equilibrium(modeq::solve_sub_imperfect(p), "profit");
  } else if (model == "planner") {
    const auto w = modeq::solve_planner_imperfect_at(p);
    std::cout << "y_star=" << num(w.policy_y) << "\n"
              << "welfare=" << num(w.welfare) << "\n"
              << "x1=" << num(w.x1) << "\n"
              << "alpha_P=" << num(w.alpha_P) << "\n"
              << "contribution_at_cutoff=" << num(w.contribution_at_cutoff) << "\n"
              << "moderated=" << (w.moderated ? "true" : "false") << "\n";
  } else if (model == "hybrid") {
    const auto h = modeq::solve_hybrid(p);
    std::cout << "chosen_model=" << modeq::to_string(h.chosen_model) << "\n"
              << "y_star=" << num(h.policy_y) << "\n"
              << "price=" << (h.price ? num(*h.price) : "NA") << "\n"
              << "profit=" << num(h.profit) << "\n"
              << "hybrid_profit=" << num(h.hybrid_profit) << "\n"
              << "free_segment=[" << num(h.free_segment.lo) << "," << num(h.free_segment.hi)
              << "]\n"
              << "paid_segment=[" << num(h.paid_segment.lo) << "," << num(h.paid_segment.hi)
              << "]\n";
  } else if (model == "boycott") {
    print_equilibrium(modeq::solve_ad_boycott(p), "profit");
  }
  return 0;
}

int run_thresholds(const modeq::ModelParams& p) {
  const auto t = modeq::thresholds(p, 1e-10);
  std::cout << "v=" << num(p.v) << "\n"
            << "alpha=" << num(p.alpha) << "\n"
            << "alpha_A=" << num(t.alpha_A) << "\n"
            << "alpha_S=" << num(t.alpha_S) << "\n"
            << "alpha_P=" << num(t.alpha_P) << "\n"
            << "alpha_1=" << num(t.alpha_1) << "\n"
            << "zeta_bar=" << num(t.zeta_bar) << "\n"
            << "zeta_hat=" << num(t.zeta_hat) << "\n"
            << "k_bar=" << (t.k_bar ? num(*t.k_bar) : "NA") << "\n";
  return 0;
}

std::string default_out(const std::string& file) {
  const char* dir = std::getenv("MODEQ_OUT_DIR");
  if (!dir || !*dir) return file;
  std::string d = dir;
  if (d.back() != '/') d += '/';
  return d + file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Content moderation equilibrium solver"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "file of key = value lines")->check(CLI::ExistingFile);

  ParamFlags solve_flags, thr_flags, fig_flags;
  std::optional<std::string> solve_model;
  auto* solve = app.add_subcommand("solve", "solve one equilibrium");
  solve->add_option("--model", solve_model, "ad|sub|hybrid|planner|boycott")
      ->check(CLI::IsMember({"ad", "sub", "hybrid", "planner", "boycott"}));
  solve_flags.attach(solve);

  auto* thr = app.add_subcommand("thresholds", "critical values for a given v");
  thr_flags.attach(thr);

  std::optional<std::string> sweep_model, sweep_out;
  std::optional<double> param_step, k_step;
  std::optional<unsigned> jobs;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  sweep->add_option("--model", sweep_model, "ad|sub|planner")
      ->check(CLI::IsMember({"ad", "sub", "planner"}));
  sweep->add_option("--out", sweep_out, "output CSV path");
  sweep->add_option("--param-step", param_step, "grid step for alpha, v, c");
  sweep->add_option("--k-step", k_step, "grid step for k");
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::optional<std::string> fig_name, fig_out;
  auto* fig = app.add_subcommand("figure", "figure data to CSV");
  fig->add_option("--name", fig_name, "figure name");
  fig->add_option("--out", fig_out, "output CSV path");
  fig_flags.attach(fig);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const Config cfg = read_config(config_path);
    const Resolver r{cfg};
    if (solve->parsed()) {
      const auto model = r.get_str("model", solve_model);
      if (!model) {
        std::cerr << "solve: --model is required\n";
        return kExitUsage;
      }
      modeq::ModelParams defaults;
      if (*model == "boycott") defaults.beta = 0.1;
      return run_solve(*model, solve_flags.resolve(r, defaults));
    }
    if (thr->parsed()) {
      auto p = thr_flags.resolve(r, modeq::ModelParams{});
      if (!(p.v > 0.0 && p.v < 0.5))
        throw modeq::Error(modeq::ErrorKind::InvalidParams, "v must satisfy 0 < v < 1/2");
      return run_thresholds(p);
    }
    if (sweep->parsed()) {
      modeq::SweepConfig sc;
      const auto model = r.get_str("model", sweep_model).value_or("ad");
      sc.model = modeq::parse_sweep_model(model);
      sc.out_path = r.get_str("out", sweep_out).value_or(default_out(model + "_sweep.csv"));
      sc.param_step = r.get("param_step", param_step).value_or(0.05);
      sc.k_step = r.get("k_step", k_step).value_or(0.01);
      sc.jobs = jobs ? *jobs : static_cast<unsigned>(r.get("jobs", std::nullopt).value_or(1));
      const std::size_t n = modeq::run_sweep(sc);
      std::cout << "rows=" << n << "\n" << "out=" << sc.out_path << "\n";
      return 0;
    }
    if (fig->parsed()) {
      const auto name = r.get_str("name", fig_name);
      if (!name) {
        std::cerr << "figure: --name is required\n";
        return kExitUsage;
      }
      const auto p = fig_flags.resolve(r, modeq::figure_defaults(*name), false);
      const std::string path = r.get_str("out", fig_out).value_or(default_out(*name + ".csv"));
      modeq::write_text(path, modeq::figure_data(*name, p));
      std::cout << "out=" << path << "\n";
      return 0;
    }
  } catch (const modeq::Error& e) {
    std::cerr << "error: " << modeq::to_string(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case modeq::ErrorKind::InvalidParams:
      case modeq::ErrorKind::InvalidGrid:
      case modeq::ErrorKind::DeltaZero:
        return kExitParams;
      case modeq::ErrorKind::IoFailure:
        return kExitIo;
      case modeq::ErrorKind::UnknownFigure:
        return kExitUsage;
      default:
        return kExitInternal;
    }
  }
  return 0;
}

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "modeq/types.hpp"

namespace modeq {

enum class SweepModel { Ad, Sub, Planner };
SweepModel parse_sweep_model(const std::string& name);
const char* to_string(SweepModel m);

struct SweepRow {
  double alpha = 0.0, v = 0.0, c = 0.0, k = 0.0;
  double y_star = 1.0;
  std::optional<double> price;
  double objective = 0.0;
  double x1 = 0.0, x2 = 1.0;
  double user_base = 0.0;
  double avg_extremeness = 0.0;
  double pruned_extreme = 0.0, pruned_moderate = 0.0;
  bool moderated = false;
  bool in_scope = true;
};

struct SweepConfig {
  SweepModel model = SweepModel::Ad;
  double param_step = 0.05;
  double k_step = 0.01;
  std::string out_path;
  unsigned jobs = 1;
  // Explicit values replace the default grid for that parameter.
  std::vector<double> alphas, vs, cs, ks;
};

const std::vector<std::string>& sweep_columns();
std::string format_number(double x);
std::string format_row(const SweepRow& r);

SweepRow solve_row(SweepModel model, const ModelParams& params);

struct SweepResult {
  std::vector<SweepRow> rows;
  // (alpha, v, c) triples dropped because alpha exceeds the subscription threshold.
  std::vector<std::vector<double>> excluded;
};

SweepResult compute_sweep(const SweepConfig& cfg);
std::string excluded_path(const std::string& out_path);
// Writes the rows and the excluded-tuple file; returns the row count.
std::size_t run_sweep(const SweepConfig& cfg);

const std::vector<std::string>& figure_names();
ModelParams figure_defaults(const std::string& name);
std::string figure_data(const std::string& name, const ModelParams& params);

void write_text(const std::string& path, const std::string& text);

}  // namespace modeq

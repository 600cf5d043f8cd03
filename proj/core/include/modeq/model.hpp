#pragma once

#include <cstddef>

#include "modeq/types.hpp"

namespace modeq {

constexpr double kTol = 1e-10;

// Probability that content at x survives under policy y and accuracy k.
inline double survival(double x, double y, double k) {
  return x <= y ? 0.5 + k : 0.5 - k;
}

// Integral of t * survival(t) over [a, b].
double weighted_content(double a, double b, double y, double k);

double utility(double x, double y, double p, const UserBase& base,
               const ModelParams& params);

double marginal_user_ad(double y, const ModelParams& params);
double marginal_user_sub(double y, double p, const ModelParams& params);

UserBase fixed_point_participation(double y, double p, const ModelParams& params,
                                   std::size_t n_users);

double avg_extremeness(const UserBase& base, double y, double k);

struct PrunedMasses {
  double m1 = 0.0;
  double m2 = 0.0;
};
PrunedMasses pruned_masses(const UserBase& base, double y, double k);

// Integral of the utility over the participating set.
double total_utility(double y, double p, const UserBase& base,
                     const ModelParams& params);

}  // namespace modeq

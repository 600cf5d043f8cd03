#pragma once

#include <optional>
#include <vector>

namespace modeq {

// Exogenous parameters. zeta is the advertising value per user in the base
// model; the hybrid and boycott extensions read a, a_prime and beta instead.
struct ModelParams {
  double alpha = 0.0;
  double v = 0.25;
  double c = 0.3;
  double zeta = 1.0;
  double k = 0.5;
  double delta = 1.0;
  double a = 1.0;
  double a_prime = 0.1;
  double beta = 0.0;
};

// Throws Error(InvalidParams) with a readable message.
void validate(const ModelParams& p);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

class UserBase {
 public:
  UserBase() = default;
  explicit UserBase(std::vector<Interval> segments);

  const std::vector<Interval>& segments() const { return segments_; }
  double measure() const;
  bool empty() const { return measure() <= 0.0; }

 private:
  std::vector<Interval> segments_;
};

struct Equilibrium {
  double policy_y = 1.0;
  bool moderated = false;
  std::optional<double> price;
  double objective = 0.0;
  UserBase user_base;
  double x1 = 0.0;
  double x2 = 1.0;
  double avg_extremeness = 0.0;
  double pruned_extreme = 0.0;
  double pruned_moderate = 0.0;
  bool in_scope = true;
};

// Throws Error(InvalidParams) if the outcome breaks its own invariants.
void check_invariants(const Equilibrium& eq);

}  // namespace modeq

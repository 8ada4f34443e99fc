#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specprop/numerics.hpp"

namespace specprop {

// K = 2 * diameter + 1.
double estimate_K(double diameter_upper);

struct DeviationEstimates {
  double delta_lip_rel = 0.0;
  double delta_op_rel = 0.0;
  double K = 1.0;
  bool probe_restricted = true;  // Lip deviation measured on a probe set only
};

struct BoundReport {
  double epsilon = 0.0;
  double tunnel_extent_bound = 0.0;  // K eps
  double semigroup_slope = 0.0;      // 3 K eps
  double time_horizon = 0.0;         // 1 / (5 K eps), +inf when eps = 0
  double propinquity_bound = 0.0;    // 5 K eps
  bool in_regime = true;             // eps <= min(1, 1/(K+1))
  std::vector<std::string> caveats;
};

BoundReport propinquity_upper_bound(const DeviationEstimates& est);

struct BoundSweep {
  std::vector<BoundReport> reports;
  bool monotone = true;                     // nonincreasing over the whole sweep
  std::optional<std::size_t> monotone_from; // first index from which the tail is nonincreasing
};

BoundSweep bound_sweep(const std::vector<DeviationEstimates>& seq);

std::string bound_report_json(const BoundReport& r);

// Diameter of R^d / 2 pi Z^d under the constant metric G (grid search, d <= 3);
// a heuristic stand-in for the quantum diameter.
double flat_torus_diameter(const RMatrix& G);

// pi sqrt(d lambda_max): diameter upper bound for a metric bounded by lambda_max.
double torus_diameter_upper_bound(int d, double lambda_max);

}  // namespace specprop

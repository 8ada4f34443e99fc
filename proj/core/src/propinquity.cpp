#include "specprop/propinquity.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "specprop/errors.hpp"

namespace specprop {

double estimate_K(double diameter_upper) {
  if (!(diameter_upper >= 0.0)) throw ValidationError(fmt::format("diameter must be nonnegative, got {}", diameter_upper));
  return 2.0 * diameter_upper + 1.0;
}

BoundReport propinquity_upper_bound(const DeviationEstimates& est) {
  if (!(est.K >= 1.0)) throw ValidationError(fmt::format("K must be >= 1, got {}", est.K));
  if (!(est.delta_lip_rel >= 0.0) || !(est.delta_op_rel >= 0.0))
    throw ValidationError("deviation estimates must be nonnegative");

  BoundReport r;
  r.epsilon = std::max(est.delta_lip_rel, est.delta_op_rel / est.K);
  r.tunnel_extent_bound = est.K * r.epsilon;
  r.semigroup_slope = 3.0 * r.tunnel_extent_bound;
  r.propinquity_bound = 5.0 * r.tunnel_extent_bound;
  r.time_horizon = r.propinquity_bound > 0.0 ? 1.0 / r.propinquity_bound : std::numeric_limits<double>::infinity();
  r.in_regime = r.epsilon <= std::min(1.0, 1.0 / (est.K + 1.0));
  if (est.probe_restricted) r.caveats.push_back("probe_restricted");
  if (!r.in_regime) r.caveats.push_back("not_in_regime");
  if (r.epsilon == 0.0) r.caveats.push_back("horizon_unbounded");
  return r;
}

BoundSweep bound_sweep(const std::vector<DeviationEstimates>& seq) {
  BoundSweep s;
  for (const auto& e : seq) s.reports.push_back(propinquity_upper_bound(e));
  for (std::size_t i = 1; i < s.reports.size(); ++i)
    if (s.reports[i].propinquity_bound > s.reports[i - 1].propinquity_bound) s.monotone = false;
  if (!s.reports.empty()) {
    std::size_t from = s.reports.size() - 1;
    while (from > 0 && s.reports[from].propinquity_bound <= s.reports[from - 1].propinquity_bound) --from;
    s.monotone_from = from;
  }
  return s;
}

std::string bound_report_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["epsilon"] = r.epsilon;
  j["tunnel_extent_bound"] = r.tunnel_extent_bound;
  j["semigroup_slope"] = r.semigroup_slope;
  j["time_horizon"] = std::isinf(r.time_horizon) ? nlohmann::ordered_json("unbounded") : nlohmann::ordered_json(r.time_horizon);
  j["propinquity_bound"] = r.propinquity_bound;
  j["in_regime"] = r.in_regime;
  j["caveats"] = r.caveats;
  return j.dump(2);
}

double flat_torus_diameter(const RMatrix& G) {
  const int d = static_cast<int>(G.rows());
  if (d < 1 || G.cols() != d) throw ValidationError("flat_torus_diameter needs a square matrix");
  if (d > 3) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(G, Eigen::EigenvaluesOnly);
    return torus_diameter_upper_bound(d, es.eigenvalues().maxCoeff());
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const int steps = d == 1 ? 256 : (d == 2 ? 64 : 24);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  double diam = 0.0;
  const int shifts = 1;
  while (true) {
    RVector x(d);
    for (int i = 0; i < d; ++i) x(i) = two_pi * idx[static_cast<std::size_t>(i)] / steps;
    // distance to the nearest lattice point 2 pi k
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> k(static_cast<std::size_t>(d), -shifts);
    while (true) {
      RVector y = x;
      for (int i = 0; i < d; ++i) y(i) -= two_pi * k[static_cast<std::size_t>(i)];
      best = std::min(best, std::sqrt(y.dot(G * y)));
      int t = 0;
      while (t < d && k[static_cast<std::size_t>(t)] == shifts + 1) k[static_cast<std::size_t>(t++)] = -shifts;
      if (t == d) break;
      ++k[static_cast<std::size_t>(t)];
    }
    diam = std::max(diam, best);
    int t = 0;
    while (t < d && idx[static_cast<std::size_t>(t)] == steps) idx[static_cast<std::size_t>(t++)] = 0;
    if (t == d) break;
    ++idx[static_cast<std::size_t>(t)];
  }
  return diam;
}

double torus_diameter_upper_bound(int d, double lambda_max) {
  if (d < 1 || !(lambda_max > 0.0)) throw ValidationError("diameter bound needs d >= 1 and a positive eigenvalue bound");
  return std::numbers::pi * std::sqrt(d * lambda_max);
}

}  // namespace specprop

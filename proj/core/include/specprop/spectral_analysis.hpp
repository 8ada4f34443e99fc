#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specprop/numerics.hpp"

namespace specprop {

// Sum of multiplicities of values in [-lambda, lambda].
int count_interval(const Spectrum& spec, double lambda);

// Distance from {-lambda, lambda} to the nearest value; rejects margins below gap_tol.
double validate_lambda(const Spectrum& spec, double lambda, double gap_tol);

// Hausdorff distance of two nonempty finite real sets.
double hausdorff(const std::vector<double>& a, const std::vector<double>& b);

// Values in [-lambda, lambda] repeated by multiplicity, ascending.
std::vector<double> label_eigenvalues(const Spectrum& spec, double lambda, double gap_tol = 0.0);

// Distinct values in [-lambda, lambda].
std::vector<double> interval_values(const Spectrum& spec, double lambda);

struct StepRecord {
  int index = 0;
  int count = 0;
  double hausdorff = 0.0;                // +inf when exactly one restriction is empty
  std::optional<double> labeled_dev;     // only when counts match
};

struct ConvergenceReport {
  std::vector<StepRecord> steps;
  std::optional<int> stabilization_index;
  double lambda = 0.0;
  double gap_margin = 0.0;
  int target_count = 0;
};

ConvergenceReport convergence_report(const std::vector<Spectrum>& seq, const Spectrum& target, double lambda,
                                     double gap_tol);

// step,count,hausdorff,labeled_dev
std::string report_csv(const ConvergenceReport& r);
// {"lambda":..,"margin":..,"stabilization":..,"target_count":..}
std::string report_summary_json(const ConvergenceReport& r);

}  // namespace specprop

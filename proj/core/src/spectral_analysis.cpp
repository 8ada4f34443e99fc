#include "specprop/spectral_analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include "json.hpp"

#include "specprop/errors.hpp"

namespace specprop {

int count_interval(const Spectrum& spec, double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  int n = 0;
  for (const auto& e : spec.entries())
    if (e.value >= -lambda && e.value <= lambda) n += e.multiplicity;
  return n;
}

double validate_lambda(const Spectrum& spec, double lambda, double gap_tol) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& e : spec.entries())
    margin = std::min({margin, std::abs(e.value - lambda), std::abs(e.value + lambda)});
  if (margin < gap_tol || margin == 0.0)
    throw ValidationError(fmt::format(
        "lambda = {} lies within {:.3e} of the target spectrum (gap_tol {:.3e}); the continuity statement needs lambda outside the spectrum",
        lambda, margin, gap_tol));
  return margin;
}

double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw ValidationError("hausdorff distance needs two nonempty sets");
  auto directed = [](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0.0;
    for (double u : x) {
      double best = std::numeric_limits<double>::infinity();
      for (double v : y) best = std::min(best, std::abs(u - v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

std::vector<double> label_eigenvalues(const Spectrum& spec, double lambda, double gap_tol) {
  validate_lambda(spec, lambda, gap_tol);
  std::vector<double> out;
  for (const auto& e : spec.entries())
    if (e.value >= -lambda && e.value <= lambda) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.value);
  return out;
}

std::vector<double> interval_values(const Spectrum& spec, double lambda) {
  std::vector<double> out;
  for (const auto& e : spec.entries())
    if (e.value >= -lambda && e.value <= lambda) out.push_back(e.value);
  return out;
}

ConvergenceReport convergence_report(const std::vector<Spectrum>& seq, const Spectrum& target, double lambda,
                                     double gap_tol) {
  ConvergenceReport r;
  r.lambda = lambda;
  r.gap_margin = validate_lambda(target, lambda, gap_tol);
  r.target_count = count_interval(target, lambda);
  const std::vector<double> tvals = interval_values(target, lambda);
  const std::vector<double> tlabels = label_eigenvalues(target, lambda, gap_tol);

  for (std::size_t i = 0; i < seq.size(); ++i) {
    StepRecord s;
    s.index = static_cast<int>(i);
    s.count = count_interval(seq[i], lambda);
    const std::vector<double> vals = interval_values(seq[i], lambda);
    if (vals.empty() && tvals.empty()) s.hausdorff = 0.0;
    else if (vals.empty() || tvals.empty()) s.hausdorff = std::numeric_limits<double>::infinity();
    else s.hausdorff = hausdorff(vals, tvals);
    if (s.count == r.target_count) {
      std::vector<double> labels;
      for (const auto& e : seq[i].entries())
        if (e.value >= -lambda && e.value <= lambda) labels.insert(labels.end(), static_cast<std::size_t>(e.multiplicity), e.value);
      double dev = 0.0;
      for (std::size_t j = 0; j < labels.size(); ++j) dev = std::max(dev, std::abs(labels[j] - tlabels[j]));
      s.labeled_dev = dev;
    }
    r.steps.push_back(s);
  }

  for (int i = static_cast<int>(r.steps.size()) - 1; i >= 0; --i) {
    if (r.steps[static_cast<std::size_t>(i)].count != r.target_count) break;
    r.stabilization_index = i;
  }
  return r;
}

std::string report_csv(const ConvergenceReport& r) {
  std::string out = "step,count,hausdorff,labeled_dev\n";
  for (const auto& s : r.steps) {
    const std::string h = std::isinf(s.hausdorff) ? "inf" : fmt::format("{:.17g}", s.hausdorff);
    const std::string l = s.labeled_dev ? fmt::format("{:.17g}", *s.labeled_dev) : "";
    out += fmt::format("{},{},{},{}\n", s.index, s.count, h, l);
  }
  return out;
}

std::string report_summary_json(const ConvergenceReport& r) {
  nlohmann::ordered_json j;
  j["lambda"] = r.lambda;
  j["margin"] = r.gap_margin;
  j["target_count"] = r.target_count;
  j["stabilization"] = r.stabilization_index ? nlohmann::ordered_json(*r.stabilization_index) : nlohmann::ordered_json(nullptr);
  j["steps"] = r.steps.size();
  return j.dump(2) + "\n";
}

}  // namespace specprop

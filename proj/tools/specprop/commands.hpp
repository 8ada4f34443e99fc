#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace specprop::cli {

// Command-line overrides applied on top of the config.
struct RunOptions {
  std::optional<int> truncation;
  std::optional<double> lambda;
  std::optional<double> cluster_tol;
  std::optional<std::filesystem::path> out;
  int threads = 1;
  bool timestamp = false;
};

void apply_overrides(ExperimentConfig& cfg, const RunOptions& opts);

// Each run returns the files it wrote, in order.
std::vector<std::filesystem::path> run_spectrum(const ExperimentConfig& cfg, const RunOptions& opts);
std::vector<std::filesystem::path> run_converge(const ExperimentConfig& cfg, const RunOptions& opts);
std::vector<std::filesystem::path> run_product(const ExperimentConfig& cfg, const RunOptions& opts);
std::vector<std::filesystem::path> run_bound(const ExperimentConfig& cfg, const RunOptions& opts);

double run_c1dist(const std::filesystem::path& g, const std::filesystem::path& h);

// Runs fn(0..n-1) on up to `threads` workers; rethrows the failure of the
// lowest-numbered step.
template <class Fn>
void parallel_steps(std::size_t n, int threads, Fn&& fn);

}  // namespace specprop::cli

#include "parallel.ipp"

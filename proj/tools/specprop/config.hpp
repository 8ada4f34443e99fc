#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <specprop/dirac.hpp>
#include <specprop/frames.hpp>
#include <specprop/product_triple.hpp>

namespace specprop::cli {

enum class Model { quantum_torus, circle, torus2, product };

std::string model_name(Model m);

// Perturbation steps base + scale * direction, scales strictly decreasing.
struct SequenceSpec {
  std::optional<RMatrix> inner_product_direction;   // quantum-torus
  std::optional<SymmetricField> metric_direction;   // circle, torus2, product
  std::optional<CMatrix> finite_direction;          // product
  std::vector<double> scales;
};

struct ExperimentConfig {
  Model model = Model::quantum_torus;
  int d = 2;
  std::optional<InnerProduct> inner_product;
  double derivation_scale = 1.0;
  std::optional<MetricField> metric;
  std::optional<FiniteTriple> finite;
  std::optional<ProductCase> product_case;
  SpinStructure spin = SpinStructure::periodic;
  int truncation = 4;
  double lambda = 1.0;
  double gap_tol = 1e-6;
  std::optional<double> cluster_tol;
  std::optional<double> diameter;
  std::optional<SequenceSpec> sequence;
  int norm_truncation = 0;  // 0: same as truncation
  std::filesystem::path output = "out";
  std::string metric_source;
  std::string finite_source;
};

// Relative paths inside the config resolve against base_dir.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace specprop::cli

#pragma once

#include <optional>
#include <vector>

#include "specprop/clifford.hpp"
#include "specprop/frames.hpp"

namespace specprop {

using Mode = std::vector<int>;

// Triple on the d-torus action with inner product h on the dual Lie algebra,
// truncated to modes with max |n_i| <= N.
struct TorusTripleSpec {
  InnerProduct h;
  CliffordRep rep;
  int N = 1;
  double scale = 1.0;

  static TorusTripleSpec make(InnerProduct h, int N, double scale = 1.0);
  void validate() const;
  int d() const { return h.d(); }
};

struct ModeBlock {
  Mode n;
  HermitianMatrix matrix;
};

// All n in Z^d with max |n_i| <= N, lexicographic.
std::vector<Mode> mode_box(int d, int N);

ModeBlock qt_mode_matrix(const Mode& n, const TorusTripleSpec& spec);
Spectrum qt_spectrum(const TorusTripleSpec& spec, std::optional<double> cluster_tol = std::nullopt);

// Operator norm of [D_h, U^m] = sqrt(m^T H^-1 m) * scale.
double qt_lip_generator(const Mode& m, const InnerProduct& h, double scale = 1.0);

struct QtDeviation {
  double delta_lip_rel = 0.0;
  double delta_op_rel = 0.0;
  double delta_op_modes = 0.0;       // max over truncated modes
  double delta_op_asymptotic = 0.0;  // |n| -> infinity ratio
};

QtDeviation qt_deviation(const InnerProduct& h1, const InnerProduct& h2, int N, double scale = 1.0);

}  // namespace specprop

#pragma once

#include <optional>

#include "specprop/dirac.hpp"

namespace specprop {

// Constant C with max_p |d_p psi| + |psi| <= C (|psi| + |D_g psi|) on the
// truncated spinor space, derivatives taken in L2(vol_g).
struct NormEquivalence {
  double constant = 1.0;
  double derivative_part = 0.0;  // max_p |(n_p + offset) (1 + A^2)^(-1/2)|
  double weight_part = 0.0;      // max_p sup |d_p log det g| / 4
  int N = 0;
};

NormEquivalence norm_equivalence(const MetricField& g, int N, const CliffordRep& rep,
                                 SpinStructure spin = SpinStructure::periodic);

struct RgOptions {
  int grid_resolution = 0;   // 0: the metric's own grid
  int norm_truncation = 6;   // truncation used for the norm-equivalence constant
  std::optional<double> norm_constant;  // reuse a constant computed earlier for g
  SpinStructure spin = SpinStructure::periodic;
};

struct RgReport {
  double value = 0.0;          // norm_constant * bracket
  double bracket = 0.0;        // frame_term + volume_term + spin_term
  double frame_term = 0.0;     // sum_{j,p} |e_j^p(h) - e_j^p(g)|_inf
  double volume_term = 0.0;    // sum_{j,p} |e_j^p(h)|_inf |d_p log f|_inf
  double spin_term = 0.0;      // 1/4 sum_{j,k,l} |omega_jkl(h) - omega_jkl(g)|_inf
  double norm_constant = 1.0;
  double q_chain_estimate = 1.0;  // (1 + M)^-1 from the grid sup of g_pk e_j^k
  double lip_constant = 1.0;      // max_p sup sqrt(g_pp)
  double lip_deviation = 0.0;     // lip_constant * frame_term
  int grid_resolution = 0;
};

RgReport deviation_bound_rg(const MetricField& g, const MetricField& h, const CliffordRep& rep,
                            const RgOptions& opts = {});

}  // namespace specprop

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specprop/clifford.hpp"
#include "specprop/geometry.hpp"

namespace specprop {

enum class SpinStructure { periodic, antiperiodic };

struct DiracOptions {
  SpinStructure spin = SpinStructure::periodic;
  // When set, frames are e_j(g) = b_g^ref e_j(ref) instead of G^(-1/2).
  std::optional<MetricField> frame_reference;
  double hermiticity_tol = 1e-8;
  double alias_tol = 1e-10;
};

// Galerkin truncation of (det g)^(1/4) D_g (det g)^(-1/4) on the flat Fourier
// spinor basis exp(i (n + offset).x) (x) C^s, spinor index fastest.
struct DiracAssembly {
  int d = 1;
  int N = 1;
  CliffordRep rep;
  HermitianMatrix matrix;
  std::vector<Index2> modes;
  double label_offset = 0.0;
  double hermiticity_deviation = 0.0;  // before averaging with the adjoint
  double alias_tail = 0.0;
  int grid_resolution_used = 0;
  std::uint64_t metric_hash = 0;
  std::string conventions;
};

// Modes with max |n_i| <= N, lexicographic.
std::vector<Index2> fourier_modes(int d, int N);

DiracAssembly assemble_dirac(const MetricField& g, int N, const CliffordRep& rep, const DiracOptions& opts = {});

// Identity on modes tensored with the chirality of the representation.
HermitianMatrix assembly_grading(const DiracAssembly& a);

// Diagonal matrix of (n_p + offset) on the assembly basis.
RVector assembly_momentum(const DiracAssembly& a, int p);

}  // namespace specprop

#pragma once

#include <optional>
#include <vector>

#include "specprop/numerics.hpp"

namespace specprop {

// Hermitian generators with gamma_j gamma_k + gamma_k gamma_j = 2 delta_jk,
// plus the chirality when d is even.
class CliffordRep {
 public:
  int d() const { return d_; }
  int p() const { return p_; }
  int q() const { return q_; }  // 0 for even d
  int spinor_dim() const { return static_cast<int>(gammas_.front().rows()); }
  const std::vector<CMatrix>& gammas() const { return gammas_; }
  const CMatrix& gamma(int j) const { return gammas_.at(static_cast<std::size_t>(j)); }
  const std::optional<CMatrix>& grading() const { return grading_; }

 private:
  friend CliffordRep build_rep(int d, int p, std::optional<int> q);
  int d_ = 0, p_ = 1, q_ = 0;
  std::vector<CMatrix> gammas_;
  std::optional<CMatrix> grading_;
};

// Even d: p copies of the irreducible representation of dimension 2^(d/2).
// Odd d: p copies of one irreducible representation and q of the other
// (the two differ by the sign of the last generator).
CliffordRep build_rep(int d, int p = 1, std::optional<int> q = std::nullopt);

// p = 1, and q = 1 when d is odd.
CliffordRep default_rep(int d);

HermitianMatrix clifford_vector(const RVector& v, const CliffordRep& rep);

// (-i)^(d/2) gamma_1 ... gamma_d for even d.
HermitianMatrix chirality(const CliffordRep& rep);

}  // namespace specprop

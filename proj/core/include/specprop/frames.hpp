#pragma once

#include "specprop/numerics.hpp"

namespace specprop {

// Symmetric positive-definite d x d matrix, entries h(e_j, e_k) in the standard basis.
class InnerProduct {
 public:
  static InnerProduct from(RMatrix h);
  static InnerProduct identity(int d) { return from(RMatrix::Identity(d, d)); }

  const RMatrix& matrix() const { return h_; }
  int d() const { return static_cast<int>(h_.rows()); }

 private:
  explicit InnerProduct(RMatrix h) : h_(std::move(h)) {}
  RMatrix h_;
};

enum class FrameProvenance { gram_determinant, iterative, sqrt_transfer };

// Column j holds e_j(h) in the standard basis, so coefficient(j, k) = E(k, j).
struct Frame {
  RMatrix E;
  FrameProvenance provenance;

  double coefficient(int j, int k) const { return E(k, j); }
};

// Leading j x j block; j = 0 gives an empty matrix (determinant 1).
RMatrix gram_matrix(const InnerProduct& h, int j);

// Orthonormalisation of the standard basis through cofactor expansions of
// bordered Gram matrices.
Frame gram_det_frame(const InnerProduct& h);

// Classical Gram-Schmidt under h, kept as an independent check.
Frame gs_iterative(const InnerProduct& h);

// b = sqrt(G^-1 H), positive and self-adjoint for g, so g(bv, bw) = h(v, w).
RMatrix transfer_map(const InnerProduct& g, const InnerProduct& h);

// sum_j [ sum_{k<j} j |f_jk| + |f_jj - 1| ] for the gram_det_frame coefficients.
double frame_deviation(const InnerProduct& h);

}  // namespace specprop

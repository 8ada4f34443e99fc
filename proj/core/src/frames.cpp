#include "specprop/frames.hpp"

#include <fmt/format.h>

#include <cmath>

#include "specprop/errors.hpp"

namespace specprop {
namespace {

constexpr double kGramFloor = 1e-14;

double det_or_one(const RMatrix& m) { return m.size() == 0 ? 1.0 : m.determinant(); }

RMatrix drop_row_col(const RMatrix& m, int row, int col) {
  const int n = static_cast<int>(m.rows());
  RMatrix out(n - 1, n - 1);
  for (int i = 0, oi = 0; i < n; ++i) {
    if (i == row) continue;
    for (int j = 0, oj = 0; j < n; ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

}  // namespace

InnerProduct InnerProduct::from(RMatrix h) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw ValidationError(fmt::format("inner product must be square and nonempty, got {}x{}", h.rows(), h.cols()));
  const double scale = 1.0 + h.cwiseAbs().maxCoeff();
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) throw ValidationError(fmt::format("inner product not symmetric (deviation {:.3e})", asym));
  RMatrix sym = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues()(0) > 0.0))
    throw ValidationError(fmt::format("inner product not positive definite (eigenvalue {:.6e})", es.eigenvalues()(0)));
  return InnerProduct(std::move(sym));
}

RMatrix gram_matrix(const InnerProduct& h, int j) {
  if (j < 0 || j > h.d()) throw ValidationError(fmt::format("gram_matrix index {} outside [0, {}]", j, h.d()));
  return h.matrix().topLeftCorner(j, j);
}

Frame gram_det_frame(const InnerProduct& h) {
  const int d = h.d();
  RMatrix E = RMatrix::Zero(d, d);
  double det_prev = 1.0;
  for (int j = 1; j <= d; ++j) {
    const RMatrix G = gram_matrix(h, j);
    const double det_j = det_or_one(G);
    if (!(det_j >= kGramFloor))
      throw ValidationError(fmt::format("Gram determinant {:.3e} below {:.0e} at index j = {}", det_j, kGramFloor, j));
    // First j-1 rows of G, last row all ones.
    RMatrix D = G;
    D.row(j - 1).setOnes();
    const double norm = 1.0 / std::sqrt(det_j * det_prev);
    for (int k = 1; k <= j; ++k) {
      const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
      E(k - 1, j - 1) = norm * sign * det_or_one(drop_row_col(D, j - 1, k - 1));
    }
    det_prev = det_j;
  }
  return {E, FrameProvenance::gram_determinant};
}

Frame gs_iterative(const InnerProduct& h) {
  const int d = h.d();
  const RMatrix& H = h.matrix();
  RMatrix E = RMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    RVector v = RVector::Unit(d, j);
    RVector w = v;
    for (int k = 0; k < j; ++k) w -= (E.col(k).dot(H * v)) * E.col(k);
    const double n2 = w.dot(H * w);
    if (!(n2 > kGramFloor)) throw ValidationError(fmt::format("Gram-Schmidt breakdown at index j = {}", j + 1));
    E.col(j) = w / std::sqrt(n2);
  }
  return {E, FrameProvenance::iterative};
}

RMatrix transfer_map(const InnerProduct& g, const InnerProduct& h) {
  if (g.d() != h.d()) throw ValidationError(fmt::format("transfer_map dimension mismatch: {} vs {}", g.d(), h.d()));
  // With S = G^(1/2), y = S v turns g into the identity and h into S^-1 H S^-1.
  const RMatrix S = sqrt_spd(g.matrix());
  const RMatrix Sinv = S.inverse();
  RMatrix hat = Sinv * h.matrix() * Sinv;
  hat = 0.5 * (hat + hat.transpose());
  return Sinv * sqrt_spd(hat) * S;
}

double frame_deviation(const InnerProduct& h) {
  const Frame f = gram_det_frame(h);
  double total = 0.0;
  for (int j = 0; j < h.d(); ++j) {
    for (int k = 0; k < j; ++k) total += (j + 1) * std::abs(f.coefficient(j, k));
    total += std::abs(f.coefficient(j, j) - 1.0);
  }
  return total;
}

}  // namespace specprop

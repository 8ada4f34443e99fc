#pragma once

#include <array>

#include "specprop/metric_field.hpp"

namespace specprop {

// Rank-3 array for d <= 2, indexed (a, b, c).
struct Array3 {
  int d = 1;
  std::array<double, 8> v{};

  double& operator()(int a, int b, int c) { return v[static_cast<std::size_t>((a * 2 + b) * 2 + c)]; }
  double operator()(int a, int b, int c) const { return v[static_cast<std::size_t>((a * 2 + b) * 2 + c)]; }
};

// Metric, inverse and first derivatives at one point.
struct LocalMetric {
  RMatrix g;
  RMatrix ginv;
  std::array<RMatrix, 2> dg;
  int d() const { return static_cast<int>(g.rows()); }
};

LocalMetric local_metric(const MetricField& g, const Point& x);

// Gamma(p, j, q) = Gamma^p_{jq}, the Levi-Civita connection.
Array3 christoffel(const LocalMetric& m);
Array3 christoffel(const MetricField& g, const Point& x);

// Orthonormal frame E (E(p, j) = e_j^p) with derivatives dE[m] = d_m E.
struct FrameJet {
  RMatrix E;
  std::array<RMatrix, 2> dE;
};

// Square root of an SPD matrix and its derivative along dA[0..d-1].
struct SqrtJet {
  RMatrix S;
  std::array<RMatrix, 2> dS;
};
SqrtJet sqrt_spd_jet(const RMatrix& A, const std::array<RMatrix, 2>& dA, int d);

// E = G^(-1/2).
RMatrix orthonormal_frame_field(const MetricField& g, const Point& x);
FrameJet canonical_frame_jet(const LocalMetric& g);

// e_j(h) = b_h^g e_j(g) with b_h^g = sqrt(H^-1 G), so the h-frame is the
// image of the canonical g-frame.
FrameJet transferred_frame_jet(const LocalMetric& g, const LocalMetric& h);

// omega(j, k, l) = g(nabla_{e_j} e_k, e_l), antisymmetric in (k, l).
Array3 spin_coefficients(const LocalMetric& m, const FrameJet& frame);
Array3 spin_coefficients(const MetricField& g, const Point& x);

// (det g / det h)^(1/4).
double volume_correction(const MetricField& g, const MetricField& h, const Point& x);

}  // namespace specprop

#include "specprop/geometry.hpp"

#include <fmt/format.h>

#include <cmath>

#include "specprop/errors.hpp"

namespace specprop {
namespace {

// X with X S + S X = A in the eigenbasis of S.
RMatrix sylvester_sym(const RMatrix& Q, const RVector& s, const RMatrix& A) {
  RMatrix B = Q.transpose() * A * Q;
  for (Eigen::Index a = 0; a < B.rows(); ++a)
    for (Eigen::Index b = 0; b < B.cols(); ++b) B(a, b) /= (s(a) + s(b));
  return Q * B * Q.transpose();
}

}  // namespace

LocalMetric local_metric(const MetricField& g, const Point& x) {
  LocalMetric m;
  m.g = g.at(x);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(m.g, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues()(0) > 0.0))
    throw ValidationError(fmt::format("metric singular at ({:.6f}, {:.6f})", x[0], x[1]));
  m.ginv = m.g.inverse();
  for (int p = 0; p < 2; ++p)
    m.dg[static_cast<std::size_t>(p)] = p < g.d() ? g.derivative(x, p) : RMatrix::Zero(g.d(), g.d());
  return m;
}

Array3 christoffel(const LocalMetric& m) {
  const int d = m.d();
  Array3 G;
  G.d = d;
  auto dg = [&](int l, int a, int b) { return m.dg[static_cast<std::size_t>(l)](a, b); };
  for (int p = 0; p < d; ++p)
    for (int j = 0; j < d; ++j)
      for (int q = 0; q < d; ++q) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += m.ginv(p, l) * (dg(j, l, q) + dg(q, j, l) - dg(l, j, q));
        G(p, j, q) = 0.5 * s;
      }
  return G;
}

Array3 christoffel(const MetricField& g, const Point& x) { return christoffel(local_metric(g, x)); }

SqrtJet sqrt_spd_jet(const RMatrix& A, const std::array<RMatrix, 2>& dA, int d) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (A + A.transpose()));
  if (!(es.eigenvalues()(0) > 0.0))
    throw ValidationError(fmt::format("sqrt_spd_jet: non-positive eigenvalue {:.6e}", es.eigenvalues()(0)));
  const RMatrix& Q = es.eigenvectors();
  const RVector s = es.eigenvalues().cwiseSqrt();
  SqrtJet out;
  out.S = Q * s.asDiagonal() * Q.transpose();
  for (int p = 0; p < 2; ++p)
    out.dS[static_cast<std::size_t>(p)] =
        p < d ? sylvester_sym(Q, s, dA[static_cast<std::size_t>(p)]) : RMatrix::Zero(A.rows(), A.cols());
  return out;
}

RMatrix orthonormal_frame_field(const MetricField& g, const Point& x) {
  return canonical_frame_jet(local_metric(g, x)).E;
}

FrameJet canonical_frame_jet(const LocalMetric& g) {
  const int d = g.d();
  const SqrtJet sq = sqrt_spd_jet(g.g, g.dg, d);
  FrameJet f;
  f.E = sq.S.inverse();
  for (int p = 0; p < 2; ++p) f.dE[static_cast<std::size_t>(p)] = -f.E * sq.dS[static_cast<std::size_t>(p)] * f.E;
  return f;
}

FrameJet transferred_frame_jet(const LocalMetric& g, const LocalMetric& h) {
  const int d = g.d();
  if (h.d() != d) throw ValidationError("transferred frame needs metrics of equal dimension");
  const FrameJet base = canonical_frame_jet(g);

  // b = S^-1 sqrt(S^-1 G S^-1) S with S = H^(1/2).
  const SqrtJet sh = sqrt_spd_jet(h.g, h.dg, d);
  const RMatrix Si = sh.S.inverse();
  const RMatrix Ghat = Si * g.g * Si;
  std::array<RMatrix, 2> dSi, dGhat;
  for (std::size_t p = 0; p < 2; ++p) {
    dSi[p] = -Si * sh.dS[p] * Si;
    dGhat[p] = dSi[p] * g.g * Si + Si * g.dg[p] * Si + Si * g.g * dSi[p];
  }
  const SqrtJet r = sqrt_spd_jet(Ghat, dGhat, d);
  const RMatrix b = Si * r.S * sh.S;

  FrameJet f;
  f.E = b * base.E;
  for (std::size_t p = 0; p < 2; ++p) {
    const RMatrix db = dSi[p] * r.S * sh.S + Si * r.dS[p] * sh.S + Si * r.S * sh.dS[p];
    f.dE[p] = db * base.E + b * base.dE[p];
  }
  return f;
}

Array3 spin_coefficients(const LocalMetric& m, const FrameJet& frame) {
  const int d = m.d();
  const Array3 G = christoffel(m);
  const RMatrix& E = frame.E;
  Array3 w;
  w.d = d;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      // (nabla_{e_j} e_k)^q
      RVector V = RVector::Zero(d);
      for (int q = 0; q < d; ++q) {
        double s = 0.0;
        for (int a = 0; a < d; ++a) {
          s += E(a, j) * frame.dE[static_cast<std::size_t>(a)](q, k);
          for (int b = 0; b < d; ++b) s += E(a, j) * E(b, k) * G(q, a, b);
        }
        V(q) = s;
      }
      const RVector gV = m.g * V;
      for (int l = 0; l < d; ++l) w(j, k, l) = gV.dot(E.col(l));
    }
  return w;
}

Array3 spin_coefficients(const MetricField& g, const Point& x) {
  const LocalMetric m = local_metric(g, x);
  return spin_coefficients(m, canonical_frame_jet(m));
}

double volume_correction(const MetricField& g, const MetricField& h, const Point& x) {
  if (g.d() != h.d()) throw ValidationError("volume_correction dimension mismatch");
  const double dg = g.at(x).determinant();
  const double dh = h.at(x).determinant();
  if (!(dg > 0.0) || !(dh > 0.0)) throw ValidationError("volume_correction needs positive determinants");
  return std::pow(dg / dh, 0.25);
}

}  // namespace specprop

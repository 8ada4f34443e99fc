#include "specprop/quantum_torus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "specprop/errors.hpp"

namespace specprop {
namespace {

RVector to_vector(const Mode& n) {
  RVector v(static_cast<Eigen::Index>(n.size()));
  for (std::size_t i = 0; i < n.size(); ++i) v(static_cast<Eigen::Index>(i)) = n[i];
  return v;
}

}  // namespace

TorusTripleSpec TorusTripleSpec::make(InnerProduct h, int N, double scale) {
  const int d = h.d();
  TorusTripleSpec spec{std::move(h), default_rep(d), N, scale};
  spec.validate();
  return spec;
}

void TorusTripleSpec::validate() const {
  if (N < 1) throw ValidationError(fmt::format("truncation N must be >= 1, got {}", N));
  if (!(scale > 0.0)) throw ValidationError("derivation scale must be positive");
  if (rep.d() != h.d()) throw ValidationError("Clifford representation dimension differs from the inner product");
}

std::vector<Mode> mode_box(int d, int N) {
  std::vector<Mode> out;
  Mode n(static_cast<std::size_t>(d), -N);
  while (true) {
    out.push_back(n);
    int i = d - 1;
    while (i >= 0 && n[static_cast<std::size_t>(i)] == N) n[static_cast<std::size_t>(i--)] = -N;
    if (i < 0) break;
    ++n[static_cast<std::size_t>(i)];
  }
  return out;
}

ModeBlock qt_mode_matrix(const Mode& n, const TorusTripleSpec& spec) {
  if (static_cast<int>(n.size()) != spec.d())
    throw ValidationError(fmt::format("mode has {} components, expected {}", n.size(), spec.d()));
  for (int c : n)
    if (std::abs(c) > spec.N)
      throw ValidationError(fmt::format("mode component {} outside the truncation N = {}", c, spec.N));
  const Frame f = gram_det_frame(spec.h);
  const RVector v = f.E.transpose() * to_vector(n) * spec.scale;
  return {n, clifford_vector(v, spec.rep)};
}

Spectrum qt_spectrum(const TorusTripleSpec& spec, std::optional<double> cluster_tol) {
  spec.validate();
  const Frame f = gram_det_frame(spec.h);
  std::vector<double> all;
  for (const Mode& n : mode_box(spec.d(), spec.N)) {
    const RVector v = f.E.transpose() * to_vector(n) * spec.scale;
    const RVector ev = eigvals_hermitian(clifford_vector(v, spec.rep));
    all.insert(all.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(all.begin(), all.end());
  const RVector as_vec = Eigen::Map<RVector>(all.data(), static_cast<Eigen::Index>(all.size()));
  return cluster(all, cluster_tol.value_or(default_cluster_tol(as_vec)));
}

double qt_lip_generator(const Mode& m, const InnerProduct& h, double scale) {
  if (static_cast<int>(m.size()) != h.d())
    throw ValidationError(fmt::format("generator has {} components, expected {}", m.size(), h.d()));
  const RVector v = to_vector(m);
  const double q = v.dot(h.matrix().ldlt().solve(v));
  return std::sqrt(std::max(q, 0.0)) * scale;
}

QtDeviation qt_deviation(const InnerProduct& h1, const InnerProduct& h2, int N, double scale) {
  if (h1.d() != h2.d()) throw ValidationError(fmt::format("qt_deviation dimension mismatch: {} vs {}", h1.d(), h2.d()));
  if (N < 1) throw ValidationError("qt_deviation needs N >= 1");
  const int d = h1.d();
  const RMatrix E1 = gram_det_frame(h1).E;
  const RMatrix E2 = gram_det_frame(h2).E;
  const RMatrix dE = E2 - E1;

  QtDeviation out;
  for (const Mode& m : mode_box(d, N)) {
    const RVector v = to_vector(m);
    const double n1 = (E1.transpose() * v).norm();
    if (n1 == 0.0) continue;
    const double n2 = (E2.transpose() * v).norm();
    out.delta_lip_rel = std::max(out.delta_lip_rel, std::abs(n2 - n1) / n1);
    // The mode block difference is clifford_vector((E2 - E1)^T n), whose norm is |(E2 - E1)^T n|.
    const double diff = (dE.transpose() * v).norm() * scale;
    out.delta_op_modes = std::max(out.delta_op_modes, diff / (1.0 + n1 * scale));
  }

  // sup_u |dE^T u| / |E1^T u|: largest generalized eigenvalue of (dE dE^T, E1 E1^T).
  const RMatrix B = E1 * E1.transpose();
  const RMatrix A = dE * dE.transpose();
  Eigen::GeneralizedSelfAdjointEigenSolver<RMatrix> ges(A, B, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  out.delta_op_asymptotic = std::sqrt(std::max(ges.eigenvalues().maxCoeff(), 0.0));
  out.delta_op_rel = std::max(out.delta_op_modes, out.delta_op_asymptotic);
  return out;
}

}  // namespace specprop

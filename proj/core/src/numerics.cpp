#include "specprop/numerics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "specprop/errors.hpp"

namespace specprop {

double hermiticity_deviation(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix HermitianMatrix::from(CMatrix m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError(fmt::format("Hermitian matrix must be square and nonempty, got {}x{}",
                                      m.rows(), m.cols()));
  const double dev = hermiticity_deviation(m);
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (!(dev <= 1e-12 * scale))
    throw ValidationError(fmt::format("matrix is not Hermitian: max|A - A^*| = {:.3e}", dev));
  return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::hermitize(const CMatrix& m, double* deviation) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError("hermitize needs a square nonempty matrix");
  if (deviation) *deviation = hermiticity_deviation(m);
  CMatrix h = 0.5 * (m + m.adjoint());
  return HermitianMatrix(std::move(h));
}

EigenDecomposition eig_hermitian(const HermitianMatrix& a) {
  // Householder tridiagonalization followed by implicit symmetric QR steps.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericalRegimeError("Hermitian eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

RVector eigvals_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalRegimeError("Hermitian eigensolver did not converge");
  return es.eigenvalues();
}

RMatrix sqrt_spd(const RMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ValidationError("sqrt_spd needs a square nonempty matrix");
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
    throw ValidationError(fmt::format("sqrt_spd: matrix not symmetric (deviation {:.3e})", asym));

  const RMatrix off = a - RMatrix(a.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!(a(i, i) > 0.0))
        throw ValidationError(fmt::format("sqrt_spd: non-positive eigenvalue {:.6e}", a(i, i)));
    return RMatrix(a.diagonal().cwiseSqrt().asDiagonal());
  }

  const RMatrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym);
  const RVector& lam = es.eigenvalues();
  if (!(lam(0) > 0.0)) throw ValidationError(fmt::format("sqrt_spd: non-positive eigenvalue {:.6e}", lam(0)));
  const RMatrix& q = es.eigenvectors();
  return q * lam.cwiseSqrt().asDiagonal() * q.transpose();
}

Spectrum::Spectrum(std::vector<SpectrumEntry> entries, double cluster_tol)
    : entries_(std::move(entries)), tol_(cluster_tol) {
  if (!(cluster_tol > 0.0)) throw ValidationError("cluster_tol must be positive");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].multiplicity < 1) throw ValidationError("spectrum multiplicities must be >= 1");
    if (!std::isfinite(entries_[i].value)) throw ValidationError("spectrum values must be finite");
    if (i > 0 && !(entries_[i].value > entries_[i - 1].value))
      throw ValidationError("spectrum values must strictly increase");
  }
}

int Spectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& e : entries_) total += e.multiplicity;
  return total;
}

std::vector<double> Spectrum::values() const {
  std::vector<double> v;
  v.reserve(entries_.size());
  for (const auto& e : entries_) v.push_back(e.value);
  return v;
}

std::vector<double> Spectrum::expanded() const {
  std::vector<double> v;
  for (const auto& e : entries_) v.insert(v.end(), static_cast<std::size_t>(e.multiplicity), e.value);
  return v;
}

double default_cluster_tol(const RVector& ascending_values) {
  double radius = 0.0;
  if (ascending_values.size() > 0) radius = ascending_values.cwiseAbs().maxCoeff();
  return 1e-8 * (1.0 + radius);
}

Spectrum cluster(const std::vector<double>& v, double tol) {
  if (!(tol > 0.0)) throw ValidationError("cluster tolerance must be positive");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) throw ValidationError("cluster input must be ascending");

  std::vector<SpectrumEntry> out;
  double sum = 0.0;
  int count = 0;
  for (double x : v) {
    if (count > 0 && x - sum / count <= tol) {
      sum += x;
      ++count;
      continue;
    }
    if (count > 0) out.push_back({sum / count, count});
    sum = x;
    count = 1;
  }
  if (count > 0) out.push_back({sum / count, count});

  // Means of neighbouring clusters can only coincide through rounding; fold them.
  std::vector<SpectrumEntry> merged;
  for (const auto& e : out) {
    if (!merged.empty() && !(e.value > merged.back().value)) {
      auto& b = merged.back();
      b.value = (b.value * b.multiplicity + e.value * e.multiplicity) / (b.multiplicity + e.multiplicity);
      b.multiplicity += e.multiplicity;
    } else {
      merged.push_back(e);
    }
  }
  return Spectrum(std::move(merged), tol);
}

Spectrum cluster(const RVector& v, double tol) {
  return cluster(std::vector<double>(v.data(), v.data() + v.size()), tol);
}

Spectrum spectrum_of(const HermitianMatrix& a, std::optional<double> tol) {
  const RVector ev = eigvals_hermitian(a);
  return cluster(ev, tol.value_or(default_cluster_tol(ev)));
}

}  // namespace specprop

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace specprop {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Dense matrix that passed the Hermiticity check on construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  // Throws ValidationError when max|A - A^*| > 1e-12 (1 + max|A|).
  static HermitianMatrix from(CMatrix m);
  // Returns (A + A^*)/2 and stores max|A - A^*| in *deviation.
  static HermitianMatrix hermitize(const CMatrix& m, double* deviation = nullptr);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

double hermiticity_deviation(const CMatrix& m);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns
};

EigenDecomposition eig_hermitian(const HermitianMatrix& a);
RVector eigvals_hermitian(const HermitianMatrix& a);

// Principal square root of a symmetric positive-definite matrix.
RMatrix sqrt_spd(const RMatrix& a);

struct SpectrumEntry {
  double value;
  int multiplicity;
};

class Spectrum {
 public:
  Spectrum() = default;
  // Throws ValidationError unless values strictly increase and multiplicities are >= 1.
  Spectrum(std::vector<SpectrumEntry> entries, double cluster_tol);

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  double cluster_tol() const { return tol_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  int total_multiplicity() const;
  std::vector<double> values() const;
  // Values repeated by multiplicity, ascending.
  std::vector<double> expanded() const;

 private:
  std::vector<SpectrumEntry> entries_;
  double tol_ = 1e-8;
};

double default_cluster_tol(const RVector& ascending_values);

// Running-mean clustering of an ascending vector.
Spectrum cluster(const RVector& ascending_values, double tol);
Spectrum cluster(const std::vector<double>& ascending_values, double tol);

// eigvals + cluster; tol defaults to default_cluster_tol.
Spectrum spectrum_of(const HermitianMatrix& a, std::optional<double> tol = std::nullopt);

}  // namespace specprop

#pragma once

#include <optional>
#include <string>

#include "specprop/dirac.hpp"

namespace specprop {

// Finite factor: Hermitian D_F with an optional grading anticommuting with it.
class FiniteTriple {
 public:
  static FiniteTriple from(CMatrix D_F, std::optional<CMatrix> grading = std::nullopt, std::string label = {});

  int dim() const { return static_cast<int>(D_.dim()); }
  const HermitianMatrix& D_F() const { return D_; }
  const std::optional<HermitianMatrix>& grading() const { return grading_; }
  const std::string& label() const { return label_; }

  // Same grading and label, D_F replaced.
  FiniteTriple with_operator(const CMatrix& D_F) const;

 private:
  HermitianMatrix D_;
  std::optional<HermitianMatrix> grading_;
  std::string label_;
};

enum class ProductCase { even, odd_graded, odd_odd };

// D (x) 1 + theta (x) D_F; theta must anticommute with D within tol.
HermitianMatrix product_even(const HermitianMatrix& D, const HermitianMatrix& theta, const FiniteTriple& F,
                             double tol = 1e-9);
HermitianMatrix product_even(const DiracAssembly& D, const FiniteTriple& F, double tol = 1e-9);

// D (x) gamma_F + 1 (x) D_F.
HermitianMatrix product_odd_graded(const HermitianMatrix& D, const FiniteTriple& F);

// D (x) 1 (x) sigma_x + 1 (x) D_F (x) sigma_y.
HermitianMatrix product_odd_odd(const HermitianMatrix& D, const FiniteTriple& F);

// max |theta D + D theta|
double anticommutation_residual(const HermitianMatrix& a, const HermitianMatrix& b);

// Spectrum of the product from the factor spectra. Each pair (lambda, mu)
// contributes mult(lambda) mult(mu) eigenvalues of modulus sqrt(lambda^2 + mu^2):
//   even: sign of lambda (the graded factor is D); on ker D the sign follows
//         the grading, split by kernel_signature = tr(theta restricted to ker D);
//   odd_graded: same with the roles of D and D_F exchanged;
//   odd_odd: both signs, each with the full multiplicity.
Spectrum product_spectrum_oracle(const Spectrum& specD, const Spectrum& specF, ProductCase which = ProductCase::even,
                                 int kernel_signature = 0, std::optional<double> cluster_tol = std::nullopt);

}  // namespace specprop

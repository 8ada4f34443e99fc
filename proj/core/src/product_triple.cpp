#include "specprop/product_triple.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "specprop/errors.hpp"

namespace specprop {
namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != cplx(0.0)) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_self_adjoint_unitary(const CMatrix& u, const char* what) {
  const double scale = 1.0 + u.cwiseAbs().maxCoeff();
  const double herm = hermiticity_deviation(u);
  const double unit = (u * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (herm > 1e-12 * scale || unit > 1e-12 * scale)
    throw ValidationError(fmt::format("{} is not a self-adjoint unitary (|u - u*| = {:.3e}, |u^2 - 1| = {:.3e})", what, herm, unit));
}

struct Pair {
  double value;
  int mult;
};

}  // namespace

FiniteTriple FiniteTriple::from(CMatrix D_F, std::optional<CMatrix> grading, std::string label) {
  FiniteTriple t;
  t.D_ = HermitianMatrix::from(std::move(D_F));
  if (grading) {
    if (grading->rows() != t.D_.dim() || grading->cols() != t.D_.dim())
      throw ValidationError("grading dimension does not match D_F");
    check_self_adjoint_unitary(*grading, "grading");
    const double anti = (*grading * t.D_.matrix() + t.D_.matrix() * *grading).cwiseAbs().maxCoeff();
    if (anti > 1e-12 * (1.0 + t.D_.matrix().cwiseAbs().maxCoeff()))
      throw ValidationError(fmt::format("grading does not anticommute with D_F (residual {:.3e})", anti));
    t.grading_ = HermitianMatrix::from(std::move(*grading));
  }
  t.label_ = std::move(label);
  return t;
}

FiniteTriple FiniteTriple::with_operator(const CMatrix& D_F) const {
  return from(D_F, grading_ ? std::optional<CMatrix>(grading_->matrix()) : std::nullopt, label_);
}

double anticommutation_residual(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("anticommutation check needs equal dimensions");
  return (a.matrix() * b.matrix() + b.matrix() * a.matrix()).cwiseAbs().maxCoeff();
}

HermitianMatrix product_even(const HermitianMatrix& D, const HermitianMatrix& theta, const FiniteTriple& F, double tol) {
  if (theta.dim() != D.dim()) throw ValidationError("grading and Dirac operator have different dimensions");
  check_self_adjoint_unitary(theta.matrix(), "theta");
  const double res = anticommutation_residual(theta, D);
  if (!(res <= tol)) throw ValidationError(fmt::format("theta does not anticommute with D (residual {:.3e} > {:.0e})", res, tol));
  const Eigen::Index k = F.dim();
  CMatrix P = kron(D.matrix(), CMatrix::Identity(k, k)) + kron(theta.matrix(), F.D_F().matrix());
  return HermitianMatrix::hermitize(P);
}

HermitianMatrix product_even(const DiracAssembly& D, const FiniteTriple& F, double tol) {
  return product_even(D.matrix, assembly_grading(D), F, tol);
}

HermitianMatrix product_odd_graded(const HermitianMatrix& D, const FiniteTriple& F) {
  if (!F.grading()) throw ValidationError("odd-graded product needs a grading on the finite triple");
  CMatrix P = kron(D.matrix(), F.grading()->matrix()) + kron(CMatrix::Identity(D.dim(), D.dim()), F.D_F().matrix());
  return HermitianMatrix::hermitize(P);
}

HermitianMatrix product_odd_odd(const HermitianMatrix& D, const FiniteTriple& F) {
  CMatrix sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  const Eigen::Index k = F.dim();
  CMatrix P = kron(kron(D.matrix(), CMatrix::Identity(k, k)), sx) +
              kron(kron(CMatrix::Identity(D.dim(), D.dim()), F.D_F().matrix()), sy);
  return HermitianMatrix::hermitize(P);
}

Spectrum product_spectrum_oracle(const Spectrum& specD, const Spectrum& specF, ProductCase which, int kernel_signature,
                                 std::optional<double> cluster_tol) {
  // For the graded cases, name the graded factor G and the other O.
  const bool swap = which == ProductCase::odd_graded;
  const Spectrum& G = swap ? specF : specD;
  const Spectrum& O = swap ? specD : specF;
  const double tol = cluster_tol.value_or(std::max(specD.cluster_tol(), specF.cluster_tol()));

  auto is_zero = [&](double v, double t) { return std::abs(v) <= t; };
  std::vector<Pair> out;
  for (const auto& g : G.entries())
    for (const auto& o : O.entries()) {
      const int ab = g.multiplicity * o.multiplicity;
      const double r = std::hypot(g.value, o.value);
      if (which == ProductCase::odd_odd) {
        if (is_zero(r, tol)) {
          out.push_back({0.0, 2 * ab});
        } else {
          out.push_back({r, ab});
          out.push_back({-r, ab});
        }
        continue;
      }
      if (!is_zero(g.value, G.cluster_tol())) {
        out.push_back({std::copysign(r, g.value), ab});
        continue;
      }
      if (is_zero(o.value, O.cluster_tol())) {
        out.push_back({0.0, ab});
        continue;
      }
      if ((g.multiplicity + kernel_signature) % 2 != 0 || std::abs(kernel_signature) > g.multiplicity)
        throw ValidationError(fmt::format("kernel signature {} incompatible with kernel dimension {}", kernel_signature, g.multiplicity));
      const int plus = (g.multiplicity + kernel_signature) / 2;
      const int minus = g.multiplicity - plus;
      if (plus > 0) out.push_back({o.value, plus * o.multiplicity});
      if (minus > 0) out.push_back({-o.value, minus * o.multiplicity});
    }

  std::sort(out.begin(), out.end(), [](const Pair& a, const Pair& b) { return a.value < b.value; });
  std::vector<double> expanded;
  for (const auto& p : out) expanded.insert(expanded.end(), static_cast<std::size_t>(p.mult), p.value);
  return cluster(expanded, tol);
}

}  // namespace specprop

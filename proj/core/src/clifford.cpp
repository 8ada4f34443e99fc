#include "specprop/clifford.hpp"

#include <fmt/format.h>

#include "specprop/errors.hpp"

namespace specprop {
namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix sigma_x() { CMatrix s(2, 2); s << 0, 1, 1, 0; return s; }
CMatrix sigma_y() { CMatrix s(2, 2); s << 0, cplx(0, -1), cplx(0, 1), 0; return s; }
CMatrix sigma_z() { CMatrix s(2, 2); s << 1, 0, 0, -1; return s; }

cplx phase_minus_i_pow(int m) {
  static const cplx table[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
  return table[m % 4];
}

// Irreducible generators for d = 2m: gamma_{2k-1} = Z^(k-1) X 1.., gamma_{2k} = Z^(k-1) Y 1..
std::vector<CMatrix> even_irrep(int m) {
  std::vector<CMatrix> gammas;
  for (int k = 0; k < m; ++k) {
    for (const CMatrix& s : {sigma_x(), sigma_y()}) {
      CMatrix g = CMatrix::Identity(1, 1);
      for (int t = 0; t < m; ++t) {
        if (t < k) g = kron(g, sigma_z());
        else if (t == k) g = kron(g, s);
        else g = kron(g, CMatrix::Identity(2, 2));
      }
      gammas.push_back(g);
    }
  }
  return gammas;
}

CMatrix product_chirality(const std::vector<CMatrix>& gammas, int dim) {
  CMatrix prod = CMatrix::Identity(dim, dim);
  for (const auto& g : gammas) prod = prod * g;
  return phase_minus_i_pow(static_cast<int>(gammas.size()) / 2) * prod;
}

CMatrix block_repeat(const CMatrix& a, int copies) {
  return kron(CMatrix::Identity(copies, copies), a);
}

CMatrix block_sum(const CMatrix& a, int pa, const CMatrix& b, int pb) {
  const Eigen::Index n = a.rows() * pa + b.rows() * pb;
  CMatrix out = CMatrix::Zero(n, n);
  out.topLeftCorner(a.rows() * pa, a.rows() * pa) = block_repeat(a, pa);
  if (pb > 0) out.bottomRightCorner(b.rows() * pb, b.rows() * pb) = block_repeat(b, pb);
  return out;
}

}  // namespace

CliffordRep build_rep(int d, int p, std::optional<int> q) {
  if (d < 1) throw ValidationError(fmt::format("Clifford dimension must be >= 1, got {}", d));
  if (p < 1) throw ValidationError(fmt::format("copy count p must be >= 1, got {}", p));
  const bool odd = d % 2 == 1;
  if (!odd && q) throw ValidationError("q is only meaningful for odd d");
  if (odd && !q) throw ValidationError("odd d needs the copy count q of the second irreducible representation");
  if (odd && *q < 1) throw ValidationError(fmt::format("copy count q must be >= 1, got {}", *q));

  CliffordRep rep;
  rep.d_ = d;
  rep.p_ = p;
  rep.q_ = odd ? *q : 0;

  const int m = d / 2;
  const int irrep_dim = 1 << m;
  std::vector<CMatrix> base = even_irrep(m);
  if (!odd) {
    for (const auto& g : base) rep.gammas_.push_back(block_repeat(g, p));
    rep.grading_ = block_repeat(product_chirality(base, irrep_dim), p);
    return rep;
  }
  // The last generator is +/- the chirality of the even part; both signs square to 1
  // and anticommute with the rest.
  const CMatrix last = product_chirality(base, irrep_dim);
  for (const auto& g : base) rep.gammas_.push_back(block_sum(g, p, g, rep.q_));
  rep.gammas_.push_back(block_sum(last, p, -last, rep.q_));
  return rep;
}

CliffordRep default_rep(int d) {
  return d % 2 == 0 ? build_rep(d, 1) : build_rep(d, 1, 1);
}

HermitianMatrix clifford_vector(const RVector& v, const CliffordRep& rep) {
  if (v.size() != rep.d())
    throw ValidationError(fmt::format("clifford_vector: vector length {} does not match d = {}", v.size(), rep.d()));
  const int s = rep.spinor_dim();
  CMatrix out = CMatrix::Zero(s, s);
  for (int j = 0; j < rep.d(); ++j) out += v(j) * rep.gamma(j);
  return HermitianMatrix::from(std::move(out));
}

HermitianMatrix chirality(const CliffordRep& rep) {
  if (!rep.grading()) throw ValidationError("chirality exists only for even d");
  return HermitianMatrix::from(*rep.grading());
}

}  // namespace specprop

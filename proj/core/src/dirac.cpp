#include "specprop/dirac.hpp"

#include <fmt/format.h>

#include <cmath>

#include "specprop/errors.hpp"

namespace specprop {
namespace {

const cplx kI(0.0, 1.0);

// Fourier coefficients of many functions sampled on one grid.
class CoefficientTable {
 public:
  CoefficientTable(const Grid& grid, int kmax) : grid_(grid), kmax_(kmax) {}

  // Transforms the samples and returns the index of the stored function.
  void add(const std::vector<cplx>& samples) { data_.push_back(forward_dft(samples, grid_)); }

  cplx at(std::size_t fn, const Index2& k) const { return data_[fn][static_cast<std::size_t>(dft_slot(k, grid_))]; }

  // Largest coefficient in the outer quarter of the resolvable band, relative to max(1, largest coefficient).
  double tail() const {
    const int edge = (3 * grid_.R) / 8;
    double big = 1.0, tail = 0.0;
    for (const auto& fn : data_)
      for (int i = 0; i < grid_.size(); ++i) {
        const Index2 k = dft_label(i, grid_);
        const double a = std::abs(fn[static_cast<std::size_t>(i)]);
        big = std::max(big, a);
        if (std::max(std::abs(k[0]), std::abs(k[1])) > edge) tail = std::max(tail, a);
      }
    return tail / big;
  }

 private:
  Grid grid_;
  int kmax_;
  std::vector<std::vector<cplx>> data_;
};

}  // namespace

std::vector<Index2> fourier_modes(int d, int N) {
  std::vector<Index2> out;
  if (d == 1) {
    for (int a = -N; a <= N; ++a) out.push_back({a, 0});
  } else {
    for (int a = -N; a <= N; ++a)
      for (int b = -N; b <= N; ++b) out.push_back({a, b});
  }
  return out;
}

DiracAssembly assemble_dirac(const MetricField& g, int N, const CliffordRep& rep, const DiracOptions& opts) {
  const int d = g.d();
  if (rep.d() != d) throw ValidationError(fmt::format("Clifford dimension {} does not match metric dimension {}", rep.d(), d));
  if (N < 1) throw ValidationError(fmt::format("truncation N must be >= 1, got {}", N));
  if (opts.frame_reference && opts.frame_reference->d() != d)
    throw ValidationError("frame reference metric has a different dimension");

  int R = std::max(g.grid_resolution(), 4 * N + 2);
  R += R % 2;
  const Grid grid{d, R};
  const int s = rep.spinor_dim();
  const int npts = grid.size();

  // Samples: frame components e_j^p, then entries of the zeroth-order term Z.
  std::vector<std::vector<cplx>> frame_samples(static_cast<std::size_t>(d * d), std::vector<cplx>(static_cast<std::size_t>(npts)));
  std::vector<std::vector<cplx>> z_samples(static_cast<std::size_t>(s * s), std::vector<cplx>(static_cast<std::size_t>(npts)));

  std::vector<CMatrix> ggg(static_cast<std::size_t>(d * d * d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) ggg[static_cast<std::size_t>((j * d + k) * d + l)] = rep.gamma(j) * rep.gamma(k) * rep.gamma(l);

  for (int i = 0; i < npts; ++i) {
    const Point x = grid.point(i);
    const LocalMetric lm = local_metric(g, x);
    const FrameJet fj = opts.frame_reference ? transferred_frame_jet(local_metric(*opts.frame_reference, x), lm)
                                             : canonical_frame_jet(lm);
    const Array3 w = spin_coefficients(lm, fj);

    CMatrix Z = CMatrix::Zero(s, s);
    // -i gamma_j (-1/4) omega_jkl gamma_k gamma_l from the spin connection.
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          if (w(j, k, l) != 0.0) Z += (0.25 * w(j, k, l)) * kI * ggg[static_cast<std::size_t>((j * d + k) * d + l)];
    // Conjugation by (det g)^(1/4): -i gamma_j e_j^p d_p((det g)^(-1/4)) (det g)^(1/4).
    for (int p = 0; p < d; ++p) {
      const double dlog = (lm.ginv * lm.dg[static_cast<std::size_t>(p)]).trace();
      for (int j = 0; j < d; ++j) Z += (0.25 * fj.E(p, j) * dlog) * kI * rep.gamma(j);
    }

    for (int j = 0; j < d; ++j)
      for (int p = 0; p < d; ++p) frame_samples[static_cast<std::size_t>(j * d + p)][static_cast<std::size_t>(i)] = fj.E(p, j);
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) z_samples[static_cast<std::size_t>(a * s + b)][static_cast<std::size_t>(i)] = Z(a, b);
  }

  CoefficientTable table(grid, 2 * N);
  for (const auto& f : frame_samples) table.add(f);
  for (const auto& f : z_samples) table.add(f);
  const double tail = table.tail();
  if (!(tail <= opts.alias_tol))
    throw NumericalRegimeError(fmt::format(
        "aliasing detector: Fourier tail {:.3e} at the resolution boundary exceeds {:.0e} (grid {}); raise grid_resolution",
        tail, opts.alias_tol, R));

  DiracAssembly out;
  out.d = d;
  out.N = N;
  out.rep = rep;
  out.modes = fourier_modes(d, N);
  out.label_offset = opts.spin == SpinStructure::antiperiodic ? 0.5 : 0.0;
  out.alias_tail = tail;
  out.grid_resolution_used = R;
  out.metric_hash = g.hash();
  out.conventions = fmt::format(
      "D=-i*sum_j gamma_j(e_j + spin connection); flat L2 via (det g)^(1/4); frame={}; labels n+{}; modes lexicographic, spinor index fastest",
      opts.frame_reference ? "transferred" : "G^(-1/2)", out.label_offset);

  const int M = static_cast<int>(out.modes.size());
  CMatrix A = CMatrix::Zero(static_cast<Eigen::Index>(M) * s, static_cast<Eigen::Index>(M) * s);
  const std::size_t zbase = static_cast<std::size_t>(d * d);
  std::vector<cplx> coef(static_cast<std::size_t>(d));
  for (int a = 0; a < M; ++a) {
    const Index2& m = out.modes[static_cast<std::size_t>(a)];
    for (int b = 0; b < M; ++b) {
      const Index2& n = out.modes[static_cast<std::size_t>(b)];
      const Index2 k{m[0] - n[0], m[1] - n[1]};
      auto blk = A.block(static_cast<Eigen::Index>(a) * s, static_cast<Eigen::Index>(b) * s, s, s);
      // -i e_j^p d_p acting on exp(i (n + offset).x) gives e_j^p (n_p + offset).
      for (int j = 0; j < d; ++j) {
        cplx c = 0.0;
        for (int p = 0; p < d; ++p)
          c += table.at(static_cast<std::size_t>(j * d + p), k) * (n[static_cast<std::size_t>(p)] + out.label_offset);
        if (c != cplx(0.0)) blk += c * rep.gamma(j);
      }
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) blk(r, c) += table.at(zbase + static_cast<std::size_t>(r * s + c), k);
    }
  }

  double dev = 0.0;
  out.matrix = HermitianMatrix::hermitize(A, &dev);
  out.hermiticity_deviation = dev;
  if (!(dev <= opts.hermiticity_tol))
    throw NumericalRegimeError(fmt::format("Hermiticity guard: pre-averaging deviation {:.3e} exceeds {:.0e}", dev, opts.hermiticity_tol));
  return out;
}

HermitianMatrix assembly_grading(const DiracAssembly& a) {
  const HermitianMatrix theta = chirality(a.rep);
  const Eigen::Index M = static_cast<Eigen::Index>(a.modes.size());
  const Eigen::Index s = theta.dim();
  CMatrix G = CMatrix::Zero(M * s, M * s);
  for (Eigen::Index i = 0; i < M; ++i) G.block(i * s, i * s, s, s) = theta.matrix();
  return HermitianMatrix::from(std::move(G));
}

RVector assembly_momentum(const DiracAssembly& a, int p) {
  if (p < 0 || p >= a.d) throw ValidationError("momentum direction out of range");
  const Eigen::Index s = a.rep.spinor_dim();
  RVector v(static_cast<Eigen::Index>(a.modes.size()) * s);
  for (std::size_t i = 0; i < a.modes.size(); ++i)
    v.segment(static_cast<Eigen::Index>(i) * s, s).setConstant(a.modes[i][static_cast<std::size_t>(p)] + a.label_offset);
  return v;
}

}  // namespace specprop

#include "specprop/deviation_bound.hpp"

#include <fmt/format.h>

#include <cmath>

#include "specprop/errors.hpp"

namespace specprop {

NormEquivalence norm_equivalence(const MetricField& g, int N, const CliffordRep& rep, SpinStructure spin) {
  DiracOptions opts;
  opts.spin = spin;
  const DiracAssembly a = assemble_dirac(g, N, rep, opts);
  const EigenDecomposition ed = eig_hermitian(a.matrix);
  const RVector damp = (1.0 + ed.values.array().square()).rsqrt().matrix();

  NormEquivalence out;
  out.N = N;
  for (int p = 0; p < a.d; ++p) {
    const RVector mom = assembly_momentum(a, p);
    const CMatrix B = mom.asDiagonal() * ed.vectors * damp.asDiagonal();
    const CMatrix BtB = B.adjoint() * B;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(BtB, Eigen::EigenvaluesOnly);
    out.derivative_part = std::max(out.derivative_part, std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0)));
  }

  // psi = (det g)^(-1/4) xi, so d_p psi picks up d_p log det g / 4.
  const Grid grid = g.grid();
  for (int i = 0; i < grid.size(); ++i) {
    const LocalMetric lm = local_metric(g, grid.point(i));
    for (int p = 0; p < a.d; ++p)
      out.weight_part = std::max(out.weight_part, 0.25 * std::abs((lm.ginv * lm.dg[static_cast<std::size_t>(p)]).trace()));
  }
  out.constant = 1.0 + out.derivative_part + out.weight_part;
  return out;
}

RgReport deviation_bound_rg(const MetricField& g, const MetricField& h, const CliffordRep& rep, const RgOptions& opts) {
  if (g.d() != h.d()) throw ValidationError(fmt::format("deviation_bound_rg dimension mismatch: {} vs {}", g.d(), h.d()));
  if (g.grid_resolution() != h.grid_resolution())
    throw ValidationError(fmt::format("grid mismatch: grid_resolution {} vs {}", g.grid_resolution(), h.grid_resolution()));
  const int d = g.d();
  const int R = std::max({opts.grid_resolution > 0 ? opts.grid_resolution : g.grid_resolution(),
                          4 * g.field().max_index(), 4 * h.field().max_index()});
  const Grid grid{d, R};

  RMatrix de_sup = RMatrix::Zero(d, d);  // (p, j)
  RMatrix eh_sup = RMatrix::Zero(d, d);
  RVector vol_sup = RVector::Zero(d);
  Array3 dw_sup;
  dw_sup.d = d;
  RMatrix chain_sup = RMatrix::Zero(d, d);  // (p, j): sup |sum_k g_pk e_j^k|
  double gpp_sup = 0.0;

  for (int i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    const LocalMetric lg = local_metric(g, x);
    const LocalMetric lh = local_metric(h, x);
    const FrameJet fg = canonical_frame_jet(lg);
    const FrameJet fh = transferred_frame_jet(lg, lh);
    const Array3 wg = spin_coefficients(lg, fg);
    const Array3 wh = spin_coefficients(lh, fh);
    const RMatrix ge = lg.g * fg.E;
    for (int p = 0; p < d; ++p) {
      gpp_sup = std::max(gpp_sup, lg.g(p, p));
      // beta_g^h is the identity on frame components here, so only the volume factor
      // contributes: d_p log((det h / det g)^(1/4)).
      const double dvol = 0.25 * ((lh.ginv * lh.dg[static_cast<std::size_t>(p)]).trace() -
                                  (lg.ginv * lg.dg[static_cast<std::size_t>(p)]).trace());
      vol_sup(p) = std::max(vol_sup(p), std::abs(dvol));
      for (int j = 0; j < d; ++j) {
        de_sup(p, j) = std::max(de_sup(p, j), std::abs(fh.E(p, j) - fg.E(p, j)));
        eh_sup(p, j) = std::max(eh_sup(p, j), std::abs(fh.E(p, j)));
        chain_sup(p, j) = std::max(chain_sup(p, j), std::abs(ge(p, j)));
      }
    }
    for (std::size_t t = 0; t < dw_sup.v.size(); ++t) dw_sup.v[t] = std::max(dw_sup.v[t], std::abs(wh.v[t] - wg.v[t]));
  }

  RgReport r;
  r.grid_resolution = R;
  for (int j = 0; j < d; ++j) {
    for (int p = 0; p < d; ++p) {
      r.frame_term += de_sup(p, j);
      r.volume_term += eh_sup(p, j) * vol_sup(p);
    }
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) r.spin_term += 0.25 * dw_sup(j, k, l);
  }
  r.bracket = r.frame_term + r.volume_term + r.spin_term;

  double chain_m = 0.0;
  for (int p = 0; p < d; ++p) chain_m = std::max(chain_m, chain_sup.row(p).sum());
  r.q_chain_estimate = 1.0 / (1.0 + chain_m);
  r.lip_constant = std::sqrt(gpp_sup);
  r.lip_deviation = r.lip_constant * r.frame_term;

  r.norm_constant = opts.norm_constant ? *opts.norm_constant
                                       : norm_equivalence(g, opts.norm_truncation, rep, opts.spin).constant;
  r.value = r.norm_constant * r.bracket;
  return r;
}

}  // namespace specprop

#include <gtest/gtest.h>

#include <specprop/deviation_bound.hpp>
#include <specprop/errors.hpp>

#include "random.hpp"

using namespace specprop;

namespace {

constexpr int kR = 32;

SymmetricField perturbation() {
  SymmetricField p(2, kR);
  p.component(0, 0) = FourierSeries::from_function(2, kR, [](const Point& x) { return 0.3 * std::cos(x[0] + x[1]); });
  p.component(0, 1) = FourierSeries::from_function(2, kR, [](const Point& x) { return 0.1 * std::sin(x[1]); });
  p.component(1, 1) = FourierSeries::from_function(2, kR, [](const Point& x) { return 0.2 * std::cos(x[0]); });
  return p;
}

MetricField base() {
  auto e2 = FourierSeries::from_function(2, kR, [](const Point& x) { return std::exp(0.2 * std::cos(x[0]) * std::cos(x[1])); }, 1e-16);
  SymmetricField f(2, kR);
  f.component(0, 0) = e2;
  f.component(1, 1) = e2;
  return MetricField::from(f);
}

}  // namespace

TEST(NormEquivalence, FlatTorus) {
  auto ne = norm_equivalence(MetricField::flat(2, 8), 4, default_rep(2));
  // |n_p| / sqrt(1 + |n|^2) peaks at n = (4, 0)
  EXPECT_NEAR(ne.derivative_part, 4.0 / std::sqrt(17.0), 1e-12);
  EXPECT_EQ(ne.weight_part, 0.0);
  EXPECT_NEAR(ne.constant, 1.0 + 4.0 / std::sqrt(17.0), 1e-12);
}

TEST(DeviationBound, ZeroAtBase) {
  auto g = base();
  auto r = deviation_bound_rg(g, g, default_rep(2));
  EXPECT_LE(r.value, 1e-13);
  EXPECT_LE(r.lip_deviation, 1e-13);
  EXPECT_GT(r.norm_constant, 1.0);
  EXPECT_GT(r.q_chain_estimate, 0.0);
  EXPECT_LE(r.q_chain_estimate, 1.0);
}

TEST(DeviationBound, DecaysAlongHalvingSweep) {
  auto g = base();
  const auto P = perturbation();
  const double C = norm_equivalence(g, 6, default_rep(2)).constant;
  RgOptions opts;
  opts.norm_constant = C;
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 1.0; t > 1e-3; t /= 2) {
    auto h = MetricField::from(g.field() + P.scaled(t));
    auto r = deviation_bound_rg(g, h, default_rep(2), opts);
    EXPECT_LT(r.value, prev);
    EXPECT_NEAR(r.bracket, r.frame_term + r.volume_term + r.spin_term, 1e-15);
    prev = r.value;
  }
  EXPECT_LT(prev, 5e-3);
}

TEST(DeviationBound, BoundsTruncatedOperatorDifference) {
  auto g = base();
  auto h = MetricField::from(g.field() + perturbation().scaled(0.25));
  const int N = 6;
  RgOptions opts;
  opts.norm_truncation = N;
  auto r = deviation_bound_rg(g, h, default_rep(2), opts);

  const CMatrix Ag = assemble_dirac(g, N, default_rep(2)).matrix.matrix();
  DiracOptions dopts;
  dopts.frame_reference = g;
  const CMatrix Ah = assemble_dirac(h, N, default_rep(2), dopts).matrix.matrix();

  std::mt19937 rng(61);
  std::normal_distribution<double> n(0, 1);
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    CVector xi(Ag.rows());
    for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = {n(rng), n(rng)};
    // weight toward low modes as well as uniformly random vectors
    if (t % 2) xi = xi.cwiseQuotient((1.0 + (Ag * xi).cwiseAbs().array()).matrix().cast<cplx>());
    const double dn = xi.norm() + (Ag * xi).norm();
    worst = std::max(worst, ((Ah - Ag) * xi).norm() / dn);
  }
  EXPECT_LE(worst, r.value * (1 + 1e-6));
}

TEST(DeviationBound, GridMismatch) {
  EXPECT_THROW(deviation_bound_rg(MetricField::flat(2, 8), MetricField::flat(2, 16), default_rep(2)), ValidationError);
}

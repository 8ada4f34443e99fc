#include <gtest/gtest.h>

#include <specprop/dirac.hpp>
#include <specprop/errors.hpp>

#include <numbers>

#include "random.hpp"

using namespace specprop;

namespace {

std::vector<double> sorted_eigs(const DiracAssembly& a) {
  const RVector ev = eigvals_hermitian(a.matrix);
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> constant_closed_form(const RMatrix& G, int N) {
  const RMatrix Ginv = G.inverse();
  std::vector<double> out;
  for (const auto& n : fourier_modes(2, N)) {
    const Eigen::Vector2d v(n[0], n[1]);
    const double r = std::sqrt(v.dot(Ginv * v));
    out.push_back(-r);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MetricField conformal(int R, double amp) {
  auto e2 = FourierSeries::from_function(2, R, [amp](const Point& x) { return std::exp(2 * amp * std::cos(x[0]) * std::cos(x[1])); }, 1e-16);
  SymmetricField f(2, R);
  f.component(0, 0) = e2;
  f.component(1, 1) = e2;
  return MetricField::from(f);
}

}  // namespace

TEST(FourierModes, Layout) {
  auto m = fourier_modes(2, 1);
  ASSERT_EQ(m.size(), 9u);
  EXPECT_EQ(m[0], (Index2{-1, -1}));
  EXPECT_EQ(m[1], (Index2{-1, 0}));
  EXPECT_EQ(fourier_modes(1, 3).size(), 7u);
}

TEST(AssembleDirac, FlatTorus) {
  auto a = assemble_dirac(MetricField::flat(2, 8), 2, default_rep(2));
  auto got = sorted_eigs(a);
  auto want = constant_closed_form(RMatrix::Identity(2, 2), 2);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  EXPECT_EQ(a.hermiticity_deviation, 0.0);
}

TEST(AssembleDirac, ConstantMetrics) {
  std::mt19937 rng(51);
  for (int t = 0; t < 5; ++t) {
    const RMatrix G = testing_util::random_spd(rng, 2);
    auto got = sorted_eigs(assemble_dirac(MetricField::constant(G, 8), 4, default_rep(2)));
    auto want = constant_closed_form(G, 4);
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10);
  }
}

TEST(AssembleDirac, ConstantCircle) {
  const double c = 1.7;
  auto g = circle_metric_from_profile(FourierSeries::constant(1, c), 8);
  auto got = sorted_eigs(assemble_dirac(g, 5, default_rep(1)));
  ASSERT_EQ(got.size(), 22u);
  for (int k = -5; k <= 5; ++k) {
    const std::size_t i = static_cast<std::size_t>(2 * (k + 5));
    EXPECT_NEAR(got[i], k / c, 1e-12);
    EXPECT_NEAR(got[i + 1], k / c, 1e-12);
  }
}

TEST(AssembleDirac, AntiperiodicCircle) {
  DiracOptions opts;
  opts.spin = SpinStructure::antiperiodic;
  auto a = assemble_dirac(MetricField::flat(1, 8), 3, default_rep(1), opts);
  EXPECT_EQ(a.label_offset, 0.5);
  auto got = sorted_eigs(a);
  for (double v : got) EXPECT_NEAR(std::abs(v - std::round(v)), 0.5, 1e-12);
  EXPECT_NEAR(got.front(), -3.5, 1e-12);
  EXPECT_NEAR(got.back(), 3.5, 1e-12);
}

TEST(AssembleDirac, CircleDependsOnLengthOnly) {
  auto f = FourierSeries::from_function(1, 64, [](const Point& x) { return 1.5 + 0.4 * std::sin(x[0]) + 0.2 * std::cos(3 * x[0]); });
  auto g = circle_metric_from_profile(f, 64);
  const double L = circle_length(f, 64);
  auto got = sorted_eigs(assemble_dirac(g, 48, default_rep(1)));
  std::sort(got.begin(), got.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  for (std::size_t i = 0; i < 20; ++i) {
    const double k = std::round(got[i] * L / (2 * std::numbers::pi));
    EXPECT_NEAR(got[i], 2 * std::numbers::pi * k / L, 1e-8);
  }
}

TEST(AssembleDirac, ConformalHermitianAndSymmetric) {
  auto a = assemble_dirac(conformal(32, 0.2), 8, default_rep(2));
  EXPECT_LE(a.hermiticity_deviation, 1e-8);
  EXPECT_LE(a.alias_tail, 1e-10);
  auto ev = sorted_eigs(a);
  for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], -ev[ev.size() - 1 - i], 1e-9);
  // chirality anticommutes with the assembly
  const CMatrix th = assembly_grading(a).matrix();
  EXPECT_LE((th * a.matrix.matrix() + a.matrix.matrix() * th).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AssembleDirac, GalerkinCauchy) {
  auto g = conformal(32, 0.2);
  auto low = [](std::vector<double> v) {
    std::vector<double> out;
    for (double x : v)
      if (std::abs(x) < 2.5) out.push_back(x);
    return out;
  };
  auto a = low(sorted_eigs(assemble_dirac(g, 8, default_rep(2))));
  auto b = low(sorted_eigs(assemble_dirac(g, 12, default_rep(2))));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-4);
}

TEST(AssembleDirac, TransferredFrameIsUnitarilyEquivalent) {
  auto g = conformal(32, 0.15);
  SymmetricField f = SymmetricField::constant(RMatrix::Identity(2, 2), 32);
  f.component(0, 1).add({1, 1}, 0.05);
  f.component(0, 1).add({-1, -1}, 0.05);
  auto h = MetricField::from(f + SymmetricField::constant(0.2 * RMatrix::Identity(2, 2), 32));
  DiracOptions opts;
  opts.frame_reference = g;
  auto a = sorted_eigs(assemble_dirac(h, 6, default_rep(2)));
  auto b = sorted_eigs(assemble_dirac(h, 6, default_rep(2), opts));
  // same operator up to a gauge change, so the low spectrum agrees to Galerkin accuracy
  auto low = [](std::vector<double> v) {
    std::vector<double> out;
    for (double x : v)
      if (std::abs(x) < 1.5) out.push_back(x);
    return out;
  };
  a = low(a);
  b = low(b);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-5);
}

TEST(AssembleDirac, Guards) {
  SymmetricField f = SymmetricField::constant(RMatrix::Identity(2, 2), 16);
  f.component(0, 0).add({7, 0}, 0.1);
  f.component(0, 0).add({-7, 0}, 0.1);
  EXPECT_THROW(assemble_dirac(MetricField::from(f), 1, default_rep(2)), NumericalRegimeError);

  DiracOptions strict;
  strict.hermiticity_tol = 1e-30;
  EXPECT_THROW(assemble_dirac(conformal(32, 0.2), 4, default_rep(2), strict), NumericalRegimeError);

  EXPECT_THROW(assemble_dirac(MetricField::flat(2, 8), 2, default_rep(1)), ValidationError);
  EXPECT_THROW(assemble_dirac(MetricField::flat(2, 8), 0, default_rep(2)), ValidationError);
}

TEST(AssembleDirac, Provenance) {
  auto g = conformal(32, 0.1);
  auto a = assemble_dirac(g, 3, default_rep(2));
  EXPECT_EQ(a.metric_hash, g.hash());
  EXPECT_EQ(a.grid_resolution_used, 32);
  EXPECT_FALSE(a.conventions.empty());
  EXPECT_EQ(assemble_dirac(MetricField::flat(2, 8), 3, default_rep(2)).grid_resolution_used, 14);
}

TEST(AssemblyMomentum, Layout) {
  auto a = assemble_dirac(MetricField::flat(2, 8), 1, default_rep(2));
  auto p0 = assembly_momentum(a, 0);
  ASSERT_EQ(p0.size(), 18);
  EXPECT_EQ(p0(0), -1.0);
  EXPECT_EQ(p0(1), -1.0);
  EXPECT_EQ(p0(17), 1.0);
}

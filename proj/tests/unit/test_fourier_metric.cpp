#include <gtest/gtest.h>

#include <specprop/errors.hpp>
#include <specprop/metric_field.hpp>

#include <numbers>

#include "random.hpp"

using namespace specprop;

namespace {

SymmetricField cos_field(double t, int R) {
  SymmetricField f = SymmetricField::constant(RMatrix::Identity(2, 2), R);
  f.component(0, 0).add({1, 0}, t / 2);
  f.component(0, 0).add({-1, 0}, t / 2);
  return f;
}

SymmetricField random_field(std::mt19937& rng, int R) {
  std::normal_distribution<double> g(0, 0.1);
  SymmetricField f = SymmetricField::constant(RMatrix::Identity(2, 2), R);
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b)
      for (int k1 = 0; k1 <= 2; ++k1)
        for (int k2 = -2; k2 <= 2; ++k2) {
          if (k1 == 0 && k2 <= 0) continue;
          const cplx c(g(rng), g(rng));
          f.component(a, b).add({k1, k2}, c);
          f.component(a, b).add({-k1, -k2}, std::conj(c));
        }
  return f;
}

}  // namespace

TEST(FourierSeries, FromFunctionRecoversModes) {
  auto f = FourierSeries::from_function(2, 16, [](const Point& x) { return 1.0 + 0.4 * std::cos(x[0]) - 0.2 * std::sin(2 * x[1] + x[0]); }, 1e-14);
  EXPECT_NEAR(f.coefficient({0, 0}).real(), 1.0, 1e-14);
  EXPECT_NEAR(f.coefficient({1, 0}).real(), 0.2, 1e-14);
  EXPECT_NEAR(f.coefficient({1, 2}).imag(), 0.1, 1e-14);
  EXPECT_NEAR(f.coefficient({-1, -2}).imag(), -0.1, 1e-14);
  EXPECT_EQ(f.coefficients().size(), 5u);
  EXPECT_LE(f.reality_defect(), 1e-15);
  EXPECT_EQ(f.max_index(), 2);
}

TEST(FourierSeries, OddGridKeepsAllLabels) {
  auto f = FourierSeries::from_function(1, 7, [](const Point& x) { return std::cos(3 * x[0]); }, 1e-14);
  EXPECT_NEAR(f.coefficient({3, 0}).real(), 0.5, 1e-14);
  EXPECT_NEAR(f.coefficient({-3, 0}).real(), 0.5, 1e-14);
}

TEST(FourierSeries, ValueDerivativeProduct) {
  auto f = FourierSeries::from_function(1, 16, [](const Point& x) { return 2.0 + std::cos(x[0]); });
  const Point x{0.7, 0.0};
  EXPECT_NEAR(f.value(x).real(), 2.0 + std::cos(0.7), 1e-14);
  EXPECT_NEAR(f.derivative(x, 0).real(), -std::sin(0.7), 1e-14);
  auto sq = f.product(f);
  EXPECT_NEAR(sq.value(x).real(), std::pow(2.0 + std::cos(0.7), 2), 1e-13);
  auto diff = (f + f.scaled(-1.0));
  EXPECT_NEAR(std::abs(diff.value(x)), 0.0, 1e-15);
}

TEST(FourierSeries, DftLabels) {
  Grid g{2, 8};
  for (int i = 0; i < g.size(); ++i) EXPECT_EQ(dft_slot(dft_label(i, g), g), i);
}

TEST(MetricField, RejectsIndefinite) {
  SymmetricField f = SymmetricField::constant(RMatrix::Identity(2, 2), 8);
  f.component(0, 0).add({1, 0}, 0.6);
  f.component(0, 0).add({-1, 0}, 0.6);
  try {
    MetricField::from(f);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("not positive definite at grid point"), std::string::npos);
  }
}

TEST(MetricField, RejectsComplexField) {
  SymmetricField f = SymmetricField::constant(RMatrix::Identity(1, 1), 8);
  f.component(0, 0).add({1, 0}, cplx(0.1, 0.0));
  EXPECT_THROW(MetricField::from(f), ValidationError);
}

TEST(MetricField, HashTracksContent) {
  auto a = cos_field(0.1, 16), b = cos_field(0.2, 16);
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_EQ(a.hash(), cos_field(0.1, 16).hash());
  EXPECT_NE(a.hash(), cos_field(0.1, 32).hash());
}

TEST(CircleLength, Examples) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(circle_length(FourierSeries::constant(1, 1.0), 16), 2 * pi, 1e-14);
  EXPECT_NEAR(circle_length(FourierSeries::constant(1, 2.0), 16), 4 * pi, 1e-14);
  auto f = FourierSeries::from_function(1, 16, [](const Point& x) { return 2.0 + std::cos(x[0]); });
  EXPECT_NEAR(circle_length(f, 16), 4 * pi, 1e-13);
  auto bad = FourierSeries::from_function(1, 16, [](const Point& x) { return 0.5 + std::cos(x[0]); });
  EXPECT_THROW(circle_length(bad, 16), ValidationError);
}

TEST(CircleMetric, SquaresProfile) {
  auto f = FourierSeries::from_function(1, 16, [](const Point& x) { return 2.0 + std::cos(x[0]); });
  auto g = circle_metric_from_profile(f, 16);
  EXPECT_NEAR(g.at({1.1, 0})(0, 0), std::pow(2.0 + std::cos(1.1), 2), 1e-13);
}

TEST(C1Distance, Examples) {
  auto g = SymmetricField::constant(RMatrix::Identity(2, 2), 16);
  EXPECT_EQ(c1_distance(g, g), 0.0);
  RMatrix e11 = RMatrix::Zero(2, 2);
  e11(0, 0) = 0.3;
  EXPECT_NEAR(c1_distance(g, g + SymmetricField::constant(e11, 16)), 0.3, 1e-15);
  EXPECT_NEAR(c1_distance(g, cos_field(0.25, 16)), 0.5, 1e-14);
  EXPECT_THROW(c1_distance(g, SymmetricField::constant(RMatrix::Identity(2, 2), 8)), ValidationError);
}

TEST(C1Distance, MetricAxioms) {
  std::mt19937 rng(31);
  for (int t = 0; t < 10; ++t) {
    auto a = random_field(rng, 16), b = random_field(rng, 16), c = random_field(rng, 16);
    EXPECT_NEAR(c1_distance(a, b), c1_distance(b, a), 1e-14);
    EXPECT_LE(c1_distance(a, c), c1_distance(a, b) + c1_distance(b, c) + 1e-14);
    EXPECT_GT(c1_distance(a, b), 0.0);
    EXPECT_EQ(c1_distance(a, a), 0.0);
  }
}

TEST(MaxMetricEigenvalue, Constant) {
  RMatrix g(2, 2);
  g << 2, 1, 1, 2;
  EXPECT_NEAR(max_metric_eigenvalue(MetricField::constant(g, 8)), 3.0, 1e-14);
}

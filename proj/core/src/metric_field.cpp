#include "specprop/metric_field.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "specprop/errors.hpp"

namespace specprop {
namespace {

constexpr double kMinEigenvalue = 1e-8;

void fnv_mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

}  // namespace

SymmetricField::SymmetricField(int d, int grid_resolution) : d_(d), R_(grid_resolution) {
  if (d != 1 && d != 2) throw ValidationError(fmt::format("metric fields support d in {{1, 2}}, got {}", d));
  if (grid_resolution < 4) throw ValidationError(fmt::format("grid_resolution must be >= 4, got {}", grid_resolution));
  for (auto& c : c_) c = FourierSeries(d);
}

SymmetricField SymmetricField::constant(const RMatrix& m, int grid_resolution) {
  const int d = static_cast<int>(m.rows());
  SymmetricField f(d, grid_resolution);
  if (m.cols() != d) throw ValidationError("constant field needs a square matrix");
  for (int j = 0; j < d; ++j)
    for (int k = j; k < d; ++k) f.component(j, k).add({0, 0}, 0.5 * (m(j, k) + m(k, j)));
  return f;
}

int SymmetricField::slot(int j, int k) {
  if (j > k) std::swap(j, k);
  return j == 0 ? k : 2;
}

FourierSeries& SymmetricField::component(int j, int k) {
  if (j < 0 || k < 0 || j >= d_ || k >= d_) throw ValidationError("metric component index out of range");
  return c_[static_cast<std::size_t>(slot(j, k))];
}

const FourierSeries& SymmetricField::component(int j, int k) const {
  if (j < 0 || k < 0 || j >= d_ || k >= d_) throw ValidationError("metric component index out of range");
  return c_[static_cast<std::size_t>(slot(j, k))];
}

RMatrix SymmetricField::at(const Point& x) const {
  RMatrix g(d_, d_);
  for (int j = 0; j < d_; ++j)
    for (int k = j; k < d_; ++k) g(j, k) = g(k, j) = component(j, k).value(x).real();
  return g;
}

RMatrix SymmetricField::derivative(const Point& x, int p) const {
  RMatrix g(d_, d_);
  for (int j = 0; j < d_; ++j)
    for (int k = j; k < d_; ++k) g(j, k) = g(k, j) = component(j, k).derivative(x, p).real();
  return g;
}

double SymmetricField::reality_defect() const {
  double r = 0.0;
  for (int j = 0; j < d_; ++j)
    for (int k = j; k < d_; ++k) r = std::max(r, component(j, k).reality_defect());
  return r;
}

int SymmetricField::max_index() const {
  int m = 0;
  for (int j = 0; j < d_; ++j)
    for (int k = j; k < d_; ++k) m = std::max(m, component(j, k).max_index());
  return m;
}

SymmetricField SymmetricField::operator+(const SymmetricField& o) const {
  if (o.d_ != d_) throw ValidationError("cannot add fields of different dimension");
  SymmetricField out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] + o.c_[i];
  return out;
}

SymmetricField SymmetricField::scaled(double s) const {
  SymmetricField out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i].scaled(s);
  return out;
}

std::uint64_t SymmetricField::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  fnv_mix(h, &d_, sizeof d_);
  fnv_mix(h, &R_, sizeof R_);
  for (int j = 0; j < d_; ++j)
    for (int k = j; k < d_; ++k) {
      fnv_mix(h, &j, sizeof j);
      fnv_mix(h, &k, sizeof k);
      for (const auto& [idx, c] : component(j, k).coefficients()) {
        if (c == cplx(0.0)) continue;
        const double re = c.real(), im = c.imag();
        fnv_mix(h, idx.data(), sizeof(int) * 2);
        fnv_mix(h, &re, sizeof re);
        fnv_mix(h, &im, sizeof im);
      }
    }
  return h;
}

MetricField MetricField::from(SymmetricField f) {
  double scale = 1.0;
  for (int j = 0; j < f.d(); ++j)
    for (int k = j; k < f.d(); ++k)
      for (const auto& [idx, c] : f.component(j, k).coefficients()) scale = std::max(scale, std::abs(c));
  const double defect = f.reality_defect();
  if (defect > 1e-12 * scale)
    throw ValidationError(fmt::format("metric coefficients violate reality c(-n) = conj c(n) (defect {:.3e})", defect));

  const Grid grid = f.grid();
  for (int i = 0; i < grid.size(); ++i) {
    const RMatrix g = f.at(grid.point(i));
    Eigen::SelfAdjointEigenSolver<RMatrix> es(g, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    if (!(lo >= kMinEigenvalue)) {
      const Index2 gi = grid.index(i);
      throw ValidationError(f.d() == 1
                                ? fmt::format("not positive definite at grid point ({}) (smallest eigenvalue {:.3e})", gi[0], lo)
                                : fmt::format("not positive definite at grid point ({}, {}) (smallest eigenvalue {:.3e})",
                                              gi[0], gi[1], lo));
    }
  }
  return MetricField(std::move(f));
}

MetricField MetricField::flat(int d, int grid_resolution) {
  return constant(RMatrix::Identity(d, d), grid_resolution);
}

MetricField MetricField::constant(const RMatrix& g, int grid_resolution) {
  return from(SymmetricField::constant(g, grid_resolution));
}

MetricField MetricField::with_grid(int grid_resolution) const {
  SymmetricField f(d(), grid_resolution);
  for (int j = 0; j < d(); ++j)
    for (int k = j; k < d(); ++k) f.component(j, k) = f_.component(j, k);
  return from(std::move(f));
}

MetricField circle_metric_from_profile(const FourierSeries& f, int grid_resolution) {
  if (f.d() != 1) throw ValidationError("circle profile must be one-dimensional");
  SymmetricField g(1, grid_resolution);
  g.component(0, 0) = f.product(f);
  return MetricField::from(std::move(g));
}

double circle_length(const FourierSeries& f, int grid_resolution) {
  if (f.d() != 1) throw ValidationError("circle profile must be one-dimensional");
  const Grid grid{1, grid_resolution};
  for (int i = 0; i < grid.size(); ++i) {
    const double v = f.value(grid.point(i)).real();
    if (!(v > 0.0)) throw ValidationError(fmt::format("circle profile not positive at grid point {} (value {:.3e})", i, v));
  }
  return 2.0 * std::numbers::pi * f.coefficient({0, 0}).real();
}

double c1_distance(const SymmetricField& g, const SymmetricField& h) {
  if (g.d() != h.d()) throw ValidationError(fmt::format("c1_distance dimension mismatch: {} vs {}", g.d(), h.d()));
  if (g.grid_resolution() != h.grid_resolution())
    throw ValidationError(fmt::format("grid mismatch: grid_resolution {} vs {}", g.grid_resolution(), h.grid_resolution()));
  const SymmetricField diff = h + g.scaled(-1.0);
  const Grid grid = g.grid();
  double out = 0.0;
  for (int j = 0; j < g.d(); ++j)
    for (int k = j; k < g.d(); ++k) {
      const FourierSeries& c = diff.component(j, k);
      double sup = 0.0;
      std::array<double, 2> dsup{0.0, 0.0};
      for (int i = 0; i < grid.size(); ++i) {
        const Point x = grid.point(i);
        sup = std::max(sup, std::abs(c.value(x).real()));
        for (int p = 0; p < g.d(); ++p)
          dsup[static_cast<std::size_t>(p)] = std::max(dsup[static_cast<std::size_t>(p)], std::abs(c.derivative(x, p).real()));
      }
      out = std::max(out, sup + std::max(dsup[0], dsup[1]));
    }
  return out;
}

double max_metric_eigenvalue(const MetricField& g) {
  const Grid grid = g.grid();
  double hi = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(g.at(grid.point(i)), Eigen::EigenvaluesOnly);
    hi = std::max(hi, es.eigenvalues().maxCoeff());
  }
  return hi;
}

}  // namespace specprop

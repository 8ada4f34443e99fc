#pragma once

#include <cstdint>

#include "specprop/fourier.hpp"

namespace specprop {

// Symmetric d x d matrix field with Fourier coefficient tables for the
// components 11, 12, 22 (only 11 when d = 1). Not required to be definite,
// so it also carries perturbation directions.
class SymmetricField {
 public:
  SymmetricField() = default;
  SymmetricField(int d, int grid_resolution);

  static SymmetricField constant(const RMatrix& m, int grid_resolution);

  int d() const { return d_; }
  int grid_resolution() const { return R_; }
  Grid grid() const { return {d_, R_}; }

  FourierSeries& component(int j, int k);
  const FourierSeries& component(int j, int k) const;

  RMatrix at(const Point& x) const;
  RMatrix derivative(const Point& x, int p) const;

  double reality_defect() const;
  int max_index() const;

  SymmetricField operator+(const SymmetricField& o) const;
  SymmetricField scaled(double s) const;

  // FNV-1a over dimension, resolution and coefficient bytes.
  std::uint64_t hash() const;

 private:
  static int slot(int j, int k);
  int d_ = 1;
  int R_ = 16;
  std::array<FourierSeries, 3> c_;
};

// A real symmetric field that is positive definite at every grid point
// (smallest eigenvalue >= 1e-8).
class MetricField {
 public:
  static MetricField from(SymmetricField f);
  static MetricField flat(int d, int grid_resolution);
  static MetricField constant(const RMatrix& g, int grid_resolution);

  const SymmetricField& field() const { return f_; }
  int d() const { return f_.d(); }
  int grid_resolution() const { return f_.grid_resolution(); }
  Grid grid() const { return f_.grid(); }
  RMatrix at(const Point& x) const { return f_.at(x); }
  RMatrix derivative(const Point& x, int p) const { return f_.derivative(x, p); }
  std::uint64_t hash() const { return f_.hash(); }

  // Same field sampled on a different grid (validated again).
  MetricField with_grid(int grid_resolution) const;

 private:
  explicit MetricField(SymmetricField f) : f_(std::move(f)) {}
  SymmetricField f_;
};

// Circle metric g = f^2 dx^2 from a positive profile f.
MetricField circle_metric_from_profile(const FourierSeries& f, int grid_resolution);

// Length 2 pi f_0 of the circle with line element f dx.
double circle_length(const FourierSeries& f, int grid_resolution);

// max over components of sup|h - g| + max_p sup|d_p (h - g)| on the common grid.
double c1_distance(const SymmetricField& g, const SymmetricField& h);

// Largest eigenvalue of g over the grid; used for diameter upper bounds.
double max_metric_eigenvalue(const MetricField& g);

}  // namespace specprop

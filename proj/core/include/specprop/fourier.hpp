#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "specprop/numerics.hpp"

namespace specprop {

// Fourier label (k1, k2); the second entry is 0 when d = 1.
using Index2 = std::array<int, 2>;
// Coordinates on [0, 2pi)^d; the second entry is ignored when d = 1.
using Point = std::array<double, 2>;

// Finite trigonometric series sum_k c_k exp(i k.x) on T^d, d in {1, 2}.
class FourierSeries {
 public:
  FourierSeries() = default;
  explicit FourierSeries(int d);

  // Constant function.
  static FourierSeries constant(int d, double value);
  // Samples f on an R^d grid and keeps coefficients with |c| > cutoff.
  static FourierSeries from_function(int d, int R, const std::function<double(const Point&)>& f,
                                     double cutoff = 1e-17);

  int d() const { return d_; }
  void add(Index2 k, cplx c);
  const std::map<Index2, cplx>& coefficients() const { return c_; }
  cplx coefficient(Index2 k) const;
  bool empty() const { return c_.empty(); }
  int max_index() const;

  cplx value(const Point& x) const;
  cplx derivative(const Point& x, int p) const;

  // max |c_{-k} - conj(c_k)|
  double reality_defect() const;

  FourierSeries operator+(const FourierSeries& o) const;
  FourierSeries scaled(double s) const;
  FourierSeries product(const FourierSeries& o) const;

 private:
  int d_ = 1;
  std::map<Index2, cplx> c_;
};

// Uniform grid of R points per direction.
struct Grid {
  int d = 1;
  int R = 1;

  int size() const { return d == 1 ? R : R * R; }
  Point point(int flat) const;
  Index2 index(int flat) const;
};

// Normalised forward DFT of grid samples: c_k = R^-d sum_x f(x) exp(-i k.x),
// returned in grid layout (entry i holds label i for i < R/2 and i - R otherwise).
std::vector<cplx> forward_dft(const std::vector<cplx>& samples, const Grid& grid);

// Entry of forward_dft output that holds label k (|k_i| < R/2).
int dft_slot(const Index2& k, const Grid& grid);

// Signed label stored at a grid-layout entry.
Index2 dft_label(int flat, const Grid& grid);

}  // namespace specprop

#include "specprop/fourier.hpp"

#include <fftw3.h>
#include <fmt/format.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "specprop/errors.hpp"

namespace specprop {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double phase(const Index2& k, const Point& x, int d) {
  return d == 1 ? k[0] * x[0] : k[0] * x[0] + k[1] * x[1];
}

}  // namespace

FourierSeries::FourierSeries(int d) : d_(d) {
  if (d != 1 && d != 2) throw ValidationError(fmt::format("Fourier series supports d in {{1, 2}}, got {}", d));
}

FourierSeries FourierSeries::constant(int d, double value) {
  FourierSeries f(d);
  f.add({0, 0}, value);
  return f;
}

FourierSeries FourierSeries::from_function(int d, int R, const std::function<double(const Point&)>& f,
                                           double cutoff) {
  FourierSeries out(d);
  const Grid grid{d, R};
  std::vector<cplx> samples(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) samples[static_cast<std::size_t>(i)] = f(grid.point(i));
  const std::vector<cplx> c = forward_dft(samples, grid);
  for (int i = 0; i < grid.size(); ++i) {
    const Index2 k = dft_label(i, grid);
    // Drop the unpaired Nyquist labels so the series stays real.
    if (R % 2 == 0 && (k[0] == -R / 2 || (d == 2 && k[1] == -R / 2))) continue;
    if (std::abs(c[static_cast<std::size_t>(i)]) > cutoff) out.add(k, c[static_cast<std::size_t>(i)]);
  }
  return out;
}

void FourierSeries::add(Index2 k, cplx c) {
  if (d_ == 1) k[1] = 0;
  auto [it, inserted] = c_.emplace(k, c);
  if (!inserted) it->second += c;
}

cplx FourierSeries::coefficient(Index2 k) const {
  if (d_ == 1) k[1] = 0;
  auto it = c_.find(k);
  return it == c_.end() ? cplx(0.0) : it->second;
}

int FourierSeries::max_index() const {
  int m = 0;
  for (const auto& [k, c] : c_) m = std::max({m, std::abs(k[0]), std::abs(k[1])});
  return m;
}

cplx FourierSeries::value(const Point& x) const {
  cplx s = 0.0;
  for (const auto& [k, c] : c_) s += c * std::polar(1.0, phase(k, x, d_));
  return s;
}

cplx FourierSeries::derivative(const Point& x, int p) const {
  if (p < 0 || p >= d_) throw ValidationError(fmt::format("derivative direction {} outside d = {}", p, d_));
  cplx s = 0.0;
  for (const auto& [k, c] : c_) s += cplx(0.0, k[static_cast<std::size_t>(p)]) * c * std::polar(1.0, phase(k, x, d_));
  return s;
}

double FourierSeries::reality_defect() const {
  double defect = 0.0;
  for (const auto& [k, c] : c_) {
    const Index2 mk{-k[0], -k[1]};
    defect = std::max(defect, std::abs(coefficient(mk) - std::conj(c)));
  }
  return defect;
}

FourierSeries FourierSeries::operator+(const FourierSeries& o) const {
  if (o.d_ != d_) throw ValidationError("cannot add Fourier series of different dimension");
  FourierSeries out = *this;
  for (const auto& [k, c] : o.c_) out.add(k, c);
  return out;
}

FourierSeries FourierSeries::scaled(double s) const {
  FourierSeries out(d_);
  for (const auto& [k, c] : c_) out.add(k, s * c);
  return out;
}

FourierSeries FourierSeries::product(const FourierSeries& o) const {
  if (o.d_ != d_) throw ValidationError("cannot multiply Fourier series of different dimension");
  FourierSeries out(d_);
  for (const auto& [ka, ca] : c_)
    for (const auto& [kb, cb] : o.c_) out.add({ka[0] + kb[0], ka[1] + kb[1]}, ca * cb);
  return out;
}

Point Grid::point(int flat) const {
  const Index2 i = index(flat);
  return {kTwoPi * i[0] / R, kTwoPi * i[1] / R};
}

Index2 Grid::index(int flat) const {
  if (d == 1) return {flat, 0};
  return {flat / R, flat % R};
}

std::vector<cplx> forward_dft(const std::vector<cplx>& samples, const Grid& grid) {
  if (static_cast<int>(samples.size()) != grid.size())
    throw ValidationError("forward_dft: sample count does not match the grid");
  const int n = grid.size();
  std::vector<cplx> out(static_cast<std::size_t>(n));
  std::vector<cplx> in = samples;
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = grid.d == 1 ? fftw_plan_dft_1d(grid.R, pin, pout, FFTW_FORWARD, FFTW_ESTIMATE)
                       : fftw_plan_dft_2d(grid.R, grid.R, pin, pout, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double norm = 1.0 / n;
  for (auto& c : out) c *= norm;
  return out;
}

int dft_slot(const Index2& k, const Grid& grid) {
  auto wrap = [&](int v) { return v < 0 ? v + grid.R : v; };
  if (grid.d == 1) return wrap(k[0]);
  return wrap(k[0]) * grid.R + wrap(k[1]);
}

Index2 dft_label(int flat, const Grid& grid) {
  const Index2 i = grid.index(flat);
  auto unwrap = [&](int v) { return v < (grid.R + 1) / 2 ? v : v - grid.R; };
  return {unwrap(i[0]), grid.d == 1 ? 0 : unwrap(i[1])};
}

}  // namespace specprop

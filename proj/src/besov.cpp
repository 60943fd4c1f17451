#include "muhs/besov.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace muhs {

namespace {

double bump(double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

// 5-point Gauss-Legendre on [a, b].
double gauss5(double a, double b) {
  static constexpr std::array<double, 5> xs = {
      -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
      0.9061798459386640};
  static constexpr std::array<double, 5> ws = {
      0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
      0.4786286704993665, 0.2369268850561891};
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += ws[i] * bump(mid + rad * xs[i]);
  return acc * rad;
}

constexpr int kCells = 1 << 14;

}  // namespace

DyadicCutoffs::DyadicCutoffs()
    : cumulative_(kCells + 1, 0.0), cell_(2.0 / kCells) {
  for (int k = 0; k < kCells; ++k) {
    const double a = -1.0 + k * cell_;
    cumulative_[k + 1] = cumulative_[k] + gauss5(a, a + cell_);
  }
  total_ = cumulative_.back();
}

double DyadicCutoffs::smooth_step(double t) const {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double pos = (t + 1.0) / cell_;
  int k = static_cast<int>(pos);
  if (k >= kCells) k = kCells - 1;
  const double a = -1.0 + k * cell_;
  return (cumulative_[k] + gauss5(a, t)) / total_;
}

double DyadicCutoffs::chi(double xi) const {
  const double r = std::abs(xi);
  if (r <= 0.75) return 1.0;
  if (r >= 4.0 / 3.0) return 0.0;
  // map [3/4, 4/3] onto [-1, 1] and descend along the smooth step
  const double t = -1.0 + 2.0 * (r - 0.75) / (4.0 / 3.0 - 0.75);
  return 1.0 - smooth_step(t);
}

const DyadicCutoffs& standard_cutoffs() {
  static const DyadicCutoffs cutoffs;
  return cutoffs;
}

int max_block_index(const PeriodicGrid& grid) {
  int q = 0;
  for (std::size_t m = grid.size() / 2; m > 1; m /= 2) ++q;
  return q + 1;  // log2(n/2) + 1
}

SpectralField block(int q, const SpectralField& f) {
  if (q <= -2) return SpectralField::zero(f.grid());
  const auto& cut = standard_cutoffs();
  const double scale = q >= 0 ? std::ldexp(1.0, -q) : 1.0;
  MultiplierOp op{"Delta_" + std::to_string(q),
                  [q, scale, &cut](int beta) {
                    const double m = q == -1 ? cut.chi(beta)
                                             : cut.phi(scale * beta);
                    return SpectralField::Complex(m, 0.0);
                  }};
  return op.apply(f);
}

SpectralField low_pass(int q, const SpectralField& f) {
  SpectralField acc = SpectralField::zero(f.grid());
  for (int p = -1; p <= q - 1; ++p) acc = acc + block(p, f);
  return acc;
}

double lp_norm(const SpectralField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  const auto& v = f.values();
  if (p == kInf) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (double x : v) acc += x * x;
  } else if (p == 1.0) {
    for (double x : v) acc += std::abs(x);
  } else {
    for (double x : v) acc += std::pow(std::abs(x), p);
  }
  return std::pow(acc / static_cast<double>(v.size()), 1.0 / p);
}

double besov_norm(const SpectralField& f, const BesovIndex& idx) {
  if (idx.p < 1.0 || idx.r < 1.0) {
    throw std::invalid_argument("besov_norm: p and r must be >= 1");
  }
  const int q_max = max_block_index(f.grid());
  if (idx.r == kInf) {
    double m = 0.0;
    for (int q = -1; q <= q_max; ++q) {
      m = std::max(m, std::exp2(q * idx.s) * lp_norm(block(q, f), idx.p));
    }
    return m;
  }
  double acc = 0.0;
  for (int q = -1; q <= q_max; ++q) {
    const double term = std::exp2(q * idx.s) * lp_norm(block(q, f), idx.p);
    acc += std::pow(term, idx.r);
  }
  return std::pow(acc, 1.0 / idx.r);
}

double sobolev_norm(const SpectralField& f, double s) {
  const auto& half = f.half_spectrum();
  const std::size_t n = f.size();
  constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  double acc = 0.0;
  for (std::size_t b = 0; b < half.size(); ++b) {
    const double w = std::pow(1.0 + four_pi_sq * b * b, s);
    const double mag2 = std::norm(half[b]);
    acc += (b == 0 || b == n / 2) ? w * mag2 : 2.0 * w * mag2;
  }
  return std::sqrt(acc);
}

}  // namespace muhs

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "muhs/grid.hpp"

namespace muhs {

/// Real 1-periodic function sampled at the collocation points, with a
/// consistent discrete Fourier coefficient view.
///
/// Both representations are kept in sync at construction time: linear
/// operations act on both, so no transform is needed; pointwise products
/// re-transform. Coefficients are stored as the half spectrum u_hat[b],
/// b = 0..n/2, with u_hat[-b] = conj(u_hat[b]) implied. Fields are
/// immutable after construction.
class SpectralField {
 public:
  using Complex = std::complex<double>;

  static SpectralField from_values(const PeriodicGrid& grid,
                                   std::vector<double> values);
  /// Builds a field from half-spectrum coefficients u_hat[b], b = 0..n/2.
  /// The imaginary parts of b = 0 and b = n/2 must vanish (realness).
  static SpectralField from_half_spectrum(const PeriodicGrid& grid,
                                          std::vector<Complex> half);
  static SpectralField zero(const PeriodicGrid& grid);
  static SpectralField constant(const PeriodicGrid& grid, double c);
  /// Adopts both representations as-is. The caller guarantees consistency;
  /// meant for linear combinations where both sides transform exactly.
  static SpectralField from_parts(const PeriodicGrid& grid,
                                  std::vector<double> values,
                                  std::vector<Complex> half) {
    return SpectralField(grid, std::move(values), std::move(half));
  }

  const PeriodicGrid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t j) const { return values_[j]; }

  /// Half spectrum u_hat[b] for b = 0..n/2.
  const std::vector<Complex>& half_spectrum() const { return coeffs_; }
  /// Coefficient for any representable wavenumber, -n/2 < beta <= n/2.
  Complex coefficient(int beta) const;
  /// Largest |beta| with a nonzero coefficient (0 for the zero field).
  int band_limit() const;

  double max_value() const;
  double min_value() const;

 private:
  SpectralField(const PeriodicGrid& grid, std::vector<double> values,
                std::vector<Complex> coeffs)
      : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

  PeriodicGrid grid_;
  std::vector<double> values_;
  std::vector<Complex> coeffs_;
};

/// Full-spectrum coefficients in FFT index order: entry i holds u_hat_beta
/// with beta = i for i <= n/2 and beta = i - n otherwise.
std::vector<SpectralField::Complex> forward_transform(const SpectralField& f);

/// Inverse of forward_transform. Rejects coefficient vectors that violate
/// conjugate symmetry beyond an absolute tolerance of 1e-10 (scaled by the
/// largest coefficient magnitude).
SpectralField inverse_transform(const PeriodicGrid& grid,
                                const std::vector<SpectralField::Complex>& coeffs);

/// A Fourier multiplier beta -> m(beta). Application preserves realness:
/// it acts on the half spectrum, which imposes m(-beta) = conj(m(beta)).
/// A Nyquist-mode symbol with a nonzero imaginary part has no real
/// representation on the grid; that mode is zeroed instead.
struct MultiplierOp {
  std::string name;
  std::function<SpectralField::Complex(int)> symbol;

  SpectralField apply(const SpectralField& f) const;
};

/// Spectral derivative of the given order (multiplier (2*pi*i*beta)^k).
SpectralField derivative(const SpectralField& f, int order = 1);

/// The spatial mean over one period, i.e. u_hat_0.
double mean(const SpectralField& f);

/// The nonlocal operator d/dx (mu - d^2/dx^2)^{-1}: smoothing by one
/// derivative and mean-annihilating. Its symbol is
/// 2*pi*i*beta / (delta(beta) + 4*pi^2*beta^2) with delta(0) = 1, else 0.
SpectralField apply_pd(const SpectralField& f);

/// (mu - d^2/dx^2)^{-1}, symbol 1 / (delta(beta) + 4*pi^2*beta^2).
SpectralField helmholtz_inverse(const SpectralField& f);

/// Band-limited Fourier series summation at an arbitrary point (mod 1).
/// Agrees with the stored values at the collocation points.
double evaluate_offgrid(const SpectralField& f, double y);

/// 2/3-rule anti-aliasing: zeroes all modes with |beta| > n/3.
SpectralField dealias(const SpectralField& f);

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double c, const SpectralField& f);
SpectralField operator*(const SpectralField& f, double c);
SpectralField operator+(const SpectralField& f, double c);
/// Pointwise product of collocation values (re-transforms).
SpectralField operator*(const SpectralField& a, const SpectralField& b);

/// Random real trigonometric polynomial with modes |beta| <= max_degree and
/// coefficients drawn uniformly from [-1,1] (rescaled by 1/(1+|beta|)).
SpectralField random_field(const PeriodicGrid& grid, int max_degree,
                           std::mt19937_64& rng, bool mean_zero = false);

}  // namespace muhs

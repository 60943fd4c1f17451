// Test-only reference computations, kept independent of the library's
// transform and norm paths.
#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "muhs/spectral.hpp"

namespace oracles {

// Naive O(n^2) discrete Fourier sum, the round-trip reference for the
// library's FFT-backed transforms.
inline std::vector<std::complex<double>> naive_dft(
    const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>(k * j) / static_cast<double>(n);
      acc += values[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc / static_cast<double>(n);
  }
  return out;
}

// Direct synthesis at a point from a full FFT-order coefficient vector.
inline double naive_eval(const std::vector<std::complex<double>>& coeffs,
                         double y) {
  const std::size_t n = coeffs.size();
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int beta = i <= n / 2 ? static_cast<int>(i)
                                : static_cast<int>(i) - static_cast<int>(n);
    const double angle = 2.0 * std::numbers::pi * beta * y;
    acc += coeffs[i] * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc.real();
}

inline double linf_diff(const muhs::SpectralField& a,
                        const muhs::SpectralField& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    worst = std::max(worst, std::abs(a.value(j) - b.value(j)));
  }
  return worst;
}

inline double linf(const muhs::SpectralField& a) {
  return std::max(std::abs(a.max_value()), std::abs(a.min_value()));
}

}  // namespace oracles

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace muhs {

/// Uniform collocation grid on the unit circle S = R/Z.
///
/// Holds n equispaced points x_j = j/n. The representable integer
/// wavenumbers are -n/2 < beta <= n/2.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(std::size_t n) : n_(n) {
    if (n < 16 || (n & (n - 1)) != 0) {
      throw std::invalid_argument(
          "PeriodicGrid: n must be a power of two >= 16");
    }
  }

  std::size_t size() const { return n_; }
  double spacing() const { return 1.0 / static_cast<double>(n_); }
  double point(std::size_t j) const {
    return static_cast<double>(j) / static_cast<double>(n_);
  }
  std::vector<double> points() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = point(j);
    return x;
  }

  /// Largest representable wavenumber (the Nyquist index n/2).
  int max_wavenumber() const { return static_cast<int>(n_ / 2); }

  friend bool operator==(const PeriodicGrid& a, const PeriodicGrid& b) {
    return a.n_ == b.n_;
  }

 private:
  std::size_t n_;
};

}  // namespace muhs

#include "muhs/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace muhs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One r2c/c2r plan pair per grid size. Plans are created with
// FFTW_UNALIGNED so the new-array execute interface accepts ordinary
// heap buffers; planning is serialized, execution is thread-safe.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
  };

  const Plans& get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    Plans p;
    p.forward = fftw_plan_dft_r2c_1d(
        static_cast<int>(n), real.data(),
        reinterpret_cast<fftw_complex*>(cplx.data()),
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_c2r_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(cplx.data()),
        real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(n, p).first->second;
  }

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
    fftw_cleanup();
  }

  std::mutex mutex_;
  std::map<std::size_t, Plans> plans_;
};

std::vector<std::complex<double>> values_to_half(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::complex<double>> half(n / 2 + 1);
  std::vector<double> scratch(v);
  fftw_execute_dft_r2c(PlanCache::instance().get(n).forward, scratch.data(),
                       reinterpret_cast<fftw_complex*>(half.data()));
  const double inv = 1.0 / static_cast<double>(n);
  for (auto& c : half) c *= inv;
  half.front() = {half.front().real(), 0.0};
  half.back() = {half.back().real(), 0.0};
  return half;
}

std::vector<double> half_to_values(std::vector<std::complex<double>> half,
                                   std::size_t n) {
  std::vector<double> v(n);
  fftw_execute_dft_c2r(PlanCache::instance().get(n).backward,
                       reinterpret_cast<fftw_complex*>(half.data()), v.data());
  return v;
}

}  // namespace

SpectralField SpectralField::from_values(const PeriodicGrid& grid,
                                         std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("SpectralField: value count != grid size");
  }
  auto half = values_to_half(values);
  return SpectralField(grid, std::move(values), std::move(half));
}

SpectralField SpectralField::from_half_spectrum(const PeriodicGrid& grid,
                                                std::vector<Complex> half) {
  if (half.size() != grid.size() / 2 + 1) {
    throw std::invalid_argument(
        "SpectralField: half spectrum must have n/2 + 1 entries");
  }
  if (std::abs(half.front().imag()) != 0.0) half.front().imag(0.0);
  if (std::abs(half.back().imag()) != 0.0) half.back().imag(0.0);
  auto values = half_to_values(half, grid.size());
  return SpectralField(grid, std::move(values), std::move(half));
}

SpectralField SpectralField::zero(const PeriodicGrid& grid) {
  return SpectralField(grid, std::vector<double>(grid.size(), 0.0),
                       std::vector<Complex>(grid.size() / 2 + 1, Complex{}));
}

SpectralField SpectralField::constant(const PeriodicGrid& grid, double c) {
  std::vector<Complex> half(grid.size() / 2 + 1, Complex{});
  half[0] = c;
  return SpectralField(grid, std::vector<double>(grid.size(), c),
                       std::move(half));
}

SpectralField::Complex SpectralField::coefficient(int beta) const {
  const int nyq = grid_.max_wavenumber();
  if (beta < -nyq + 1 || beta > nyq) {
    throw std::out_of_range("SpectralField::coefficient: beta out of band");
  }
  if (beta >= 0) return coeffs_[static_cast<std::size_t>(beta)];
  return std::conj(coeffs_[static_cast<std::size_t>(-beta)]);
}

int SpectralField::band_limit() const {
  for (std::size_t b = coeffs_.size(); b-- > 0;) {
    if (coeffs_[b] != Complex{}) return static_cast<int>(b);
  }
  return 0;
}

double SpectralField::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double SpectralField::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

std::vector<SpectralField::Complex> forward_transform(const SpectralField& f) {
  const std::size_t n = f.size();
  const auto& half = f.half_spectrum();
  std::vector<SpectralField::Complex> full(n);
  for (std::size_t b = 0; b <= n / 2; ++b) full[b] = half[b];
  for (std::size_t b = 1; b < n / 2; ++b) full[n - b] = std::conj(half[b]);
  return full;
}

SpectralField inverse_transform(
    const PeriodicGrid& grid,
    const std::vector<SpectralField::Complex>& coeffs) {
  const std::size_t n = grid.size();
  if (coeffs.size() != n) {
    throw std::invalid_argument("inverse_transform: expected n coefficients");
  }
  double amax = 0.0;
  for (const auto& c : coeffs) amax = std::max(amax, std::abs(c));
  const double tol = 1e-10 * std::max(1.0, amax);
  if (std::abs(coeffs[0].imag()) > tol ||
      std::abs(coeffs[n / 2].imag()) > tol) {
    throw std::invalid_argument(
        "inverse_transform: mean or Nyquist mode has an imaginary part");
  }
  for (std::size_t b = 1; b < n / 2; ++b) {
    if (std::abs(coeffs[n - b] - std::conj(coeffs[b])) > tol) {
      throw std::invalid_argument(
          "inverse_transform: coefficients violate conjugate symmetry at "
          "beta = " +
          std::to_string(b));
    }
  }
  std::vector<SpectralField::Complex> half(n / 2 + 1);
  for (std::size_t b = 0; b <= n / 2; ++b) half[b] = coeffs[b];
  half[0] = {half[0].real(), 0.0};
  half[n / 2] = {half[n / 2].real(), 0.0};
  return SpectralField::from_half_spectrum(grid, std::move(half));
}

SpectralField MultiplierOp::apply(const SpectralField& f) const {
  const std::size_t n = f.size();
  auto half = f.half_spectrum();
  for (std::size_t b = 0; b + 1 < half.size(); ++b) {
    half[b] *= symbol(static_cast<int>(b));
  }
  const auto m_nyq = symbol(static_cast<int>(n / 2));
  if (m_nyq.imag() != 0.0) {
    half.back() = {};
  } else {
    half.back() *= m_nyq.real();
  }
  return SpectralField::from_half_spectrum(f.grid(), std::move(half));
}

SpectralField derivative(const SpectralField& f, int order) {
  if (order < 1) throw std::invalid_argument("derivative: order must be >= 1");
  MultiplierOp op{
      "d^" + std::to_string(order) + "/dx^" + std::to_string(order),
      [order](int beta) {
        return std::pow(SpectralField::Complex(0.0, kTwoPi * beta), order);
      }};
  return op.apply(f);
}

double mean(const SpectralField& f) { return f.half_spectrum()[0].real(); }

SpectralField apply_pd(const SpectralField& f) {
  static const MultiplierOp op{"P(D)", [](int beta) {
                                 const double delta = beta == 0 ? 1.0 : 0.0;
                                 const double den =
                                     delta + 4.0 * std::numbers::pi *
                                                 std::numbers::pi * beta * beta;
                                 return SpectralField::Complex(
                                     0.0, kTwoPi * beta / den);
                               }};
  return op.apply(f);
}

SpectralField helmholtz_inverse(const SpectralField& f) {
  static const MultiplierOp op{"(mu-dxx)^-1", [](int beta) {
                                 const double delta = beta == 0 ? 1.0 : 0.0;
                                 const double den =
                                     delta + 4.0 * std::numbers::pi *
                                                 std::numbers::pi * beta * beta;
                                 return SpectralField::Complex(1.0 / den, 0.0);
                               }};
  return op.apply(f);
}

double evaluate_offgrid(const SpectralField& f, double y) {
  const auto& half = f.half_spectrum();
  const int bmax = f.band_limit();
  const std::size_t n = f.size();
  double acc = half[0].real();
  const SpectralField::Complex z = std::polar(1.0, kTwoPi * y);
  SpectralField::Complex p = 1.0;
  for (int b = 1; b <= bmax; ++b) {
    p *= z;
    const auto term = half[static_cast<std::size_t>(b)] * p;
    // The Nyquist mode represents a single real cosine, not a +/- pair.
    acc += (static_cast<std::size_t>(b) == n / 2) ? term.real()
                                                  : 2.0 * term.real();
  }
  return acc;
}

SpectralField dealias(const SpectralField& f) {
  const std::size_t n = f.size();
  const std::size_t cut = n / 3;
  auto half = f.half_spectrum();
  bool touched = false;
  for (std::size_t b = cut + 1; b < half.size(); ++b) {
    if (half[b] != SpectralField::Complex{}) touched = true;
    half[b] = {};
  }
  if (!touched) return f;
  return SpectralField::from_half_spectrum(f.grid(), std::move(half));
}

namespace {

template <typename ValueOp, typename CoeffOp>
SpectralField combine(const SpectralField& a, const SpectralField& b,
                      ValueOp vop, CoeffOp cop) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument("SpectralField: grids differ");
  }
  std::vector<double> values(a.size());
  std::vector<SpectralField::Complex> half(a.size() / 2 + 1);
  for (std::size_t j = 0; j < values.size(); ++j) {
    values[j] = vop(a.values()[j], b.values()[j]);
  }
  for (std::size_t k = 0; k < half.size(); ++k) {
    half[k] = cop(a.half_spectrum()[k], b.half_spectrum()[k]);
  }
  return SpectralField::from_parts(a.grid(), std::move(values),
                                   std::move(half));
}

}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, [](double x, double y) { return x + y; },
                 [](auto x, auto y) { return x + y; });
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, [](double x, double y) { return x - y; },
                 [](auto x, auto y) { return x - y; });
}

SpectralField operator*(double c, const SpectralField& f) {
  return combine(f, f, [c](double x, double) { return c * x; },
                 [c](auto x, auto) { return c * x; });
}

SpectralField operator*(const SpectralField& f, double c) { return c * f; }

SpectralField operator+(const SpectralField& f, double c) {
  auto values = f.values();
  for (auto& v : values) v += c;
  auto half = f.half_spectrum();
  half[0] += c;
  return SpectralField::from_parts(f.grid(), std::move(values),
                                   std::move(half));
}

SpectralField operator*(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument("SpectralField: grids differ");
  }
  std::vector<double> values(a.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    values[j] = a.values()[j] * b.values()[j];
  }
  return SpectralField::from_values(a.grid(), std::move(values));
}

SpectralField random_field(const PeriodicGrid& grid, int max_degree,
                           std::mt19937_64& rng, bool mean_zero) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<SpectralField::Complex> half(grid.size() / 2 + 1,
                                           SpectralField::Complex{});
  const int top = std::min<int>(max_degree, grid.max_wavenumber() - 1);
  for (int b = 0; b <= top; ++b) {
    const double re = dist(rng), im = dist(rng);
    const double scale = 1.0 / (1.0 + b);
    half[static_cast<std::size_t>(b)] =
        b == 0 ? SpectralField::Complex(re * scale, 0.0)
               : SpectralField::Complex(re * scale, im * scale);
  }
  if (mean_zero) half[0] = {};
  return SpectralField::from_half_spectrum(grid, std::move(half));
}

}  // namespace muhs

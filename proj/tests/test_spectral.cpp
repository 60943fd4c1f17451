#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "muhs/spectral.hpp"
#include "oracles.hpp"

using namespace muhs;
constexpr double pi = std::numbers::pi;

namespace {

SpectralField sine_field(const PeriodicGrid& grid, int k = 1) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = std::sin(2.0 * pi * k * grid.point(j));
  }
  return SpectralField::from_values(grid, v);
}

SpectralField cosine_field(const PeriodicGrid& grid, int k = 1) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = std::cos(2.0 * pi * k * grid.point(j));
  }
  return SpectralField::from_values(grid, v);
}

}  // namespace

TEST_CASE("grid validates the collocation count") {
  CHECK_THROWS_AS(PeriodicGrid(100), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGrid(8), std::invalid_argument);
  const PeriodicGrid g(64);
  CHECK(g.spacing() == doctest::Approx(1.0 / 64));
  CHECK(g.max_wavenumber() == 32);
}

TEST_CASE("constant field has a pure zero mode") {
  const PeriodicGrid g(32);
  const SpectralField one = SpectralField::constant(g, 1.0);
  CHECK(one.coefficient(0).real() == doctest::Approx(1.0).epsilon(1e-14));
  for (int b = 1; b <= 16; ++b) {
    CHECK(std::abs(one.coefficient(b)) < 1e-14);
  }
}

TEST_CASE("sine resolves to the Euler pair") {
  const PeriodicGrid g(32);
  const SpectralField f = sine_field(g);
  // sin(2 pi x) = e^{2 pi i x}/(2i) - e^{-2 pi i x}/(2i)
  CHECK(std::abs(f.coefficient(1) - SpectralField::Complex(0.0, -0.5)) < 1e-14);
  CHECK(std::abs(f.coefficient(-1) - SpectralField::Complex(0.0, 0.5)) < 1e-14);
  for (int b = 2; b <= 16; ++b) CHECK(std::abs(f.coefficient(b)) < 1e-14);
}

TEST_CASE("forward transform matches the naive DFT") {
  const PeriodicGrid g(64);
  std::mt19937_64 rng(7);
  const SpectralField f = random_field(g, 16, rng);
  const auto fast = forward_transform(f);
  const auto slow = oracles::naive_dft(f.values());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    CHECK(std::abs(fast[i] - slow[i]) < 1e-12);
  }
}

TEST_CASE("round trip reproduces random trig polynomials") {
  const PeriodicGrid g(128);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 25; ++i) {
    const SpectralField f = random_field(g, 32, rng);  // degree n/4
    const SpectralField back = inverse_transform(g, forward_transform(f));
    double scale = 0.0;
    for (double v : f.values()) scale = std::max(scale, std::abs(v));
    CHECK(oracles::linf_diff(f, back) < 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("inverse transform rejects corrupted coefficients") {
  const PeriodicGrid g(32);
  auto coeffs = forward_transform(sine_field(g));
  coeffs[3] += SpectralField::Complex(1e-3, 0.0);  // break symmetry vs n-3
  CHECK_THROWS_AS(inverse_transform(g, coeffs), std::invalid_argument);
}

TEST_CASE("inverse transform synthesizes single modes") {
  const PeriodicGrid g(32);
  std::vector<SpectralField::Complex> coeffs(32);
  coeffs[0] = 2.5;
  const SpectralField c = inverse_transform(g, coeffs);
  for (double v : c.values()) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));

  coeffs[0] = 0.0;
  coeffs[1] = 0.5;
  coeffs[31] = 0.5;
  const SpectralField cos1 = inverse_transform(g, coeffs);
  CHECK(oracles::linf_diff(cos1, cosine_field(g)) < 1e-13);
}

TEST_CASE("derivative acts mode by mode") {
  const PeriodicGrid g(64);
  const SpectralField s = sine_field(g);
  const SpectralField ds = derivative(s, 1);
  std::vector<double> expect(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    expect[j] = 2.0 * pi * std::cos(2.0 * pi * g.point(j));
  }
  CHECK(oracles::linf_diff(ds, SpectralField::from_values(g, expect)) < 1e-12);

  const SpectralField c = SpectralField::constant(g, 4.2);
  CHECK(oracles::linf(derivative(c, 3)) < 1e-14);

  // second derivative of cos(4 pi x) is -16 pi^2 cos(4 pi x)
  const SpectralField c2 = cosine_field(g, 2);
  const SpectralField d2 = derivative(c2, 2);
  CHECK(oracles::linf_diff(d2, (-16.0 * pi * pi) * c2) < 1e-10);
}

TEST_CASE("Nyquist mode is dropped from odd derivatives") {
  const PeriodicGrid g(32);
  std::vector<SpectralField::Complex> half(17);
  half[16] = 1.0;  // pure Nyquist cosine
  const SpectralField nyq = SpectralField::from_half_spectrum(g, half);
  CHECK(oracles::linf(derivative(nyq, 1)) < 1e-14);
  CHECK(oracles::linf(derivative(nyq, 2)) > 1.0);  // even orders survive
}

TEST_CASE("mean reads the zero mode") {
  const PeriodicGrid g(64);
  CHECK(mean(SpectralField::constant(g, -1.5)) == doctest::Approx(-1.5));
  CHECK(std::abs(mean(sine_field(g))) < 1e-15);
  const SpectralField f = SpectralField::constant(g, 2.0) + cosine_field(g, 2);
  CHECK(mean(f) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("P(D) annihilates constants and smooths single modes") {
  const PeriodicGrid g(64);
  CHECK(oracles::linf(apply_pd(SpectralField::constant(g, 1.0))) < 1e-14);

  // P(D) sin(2 pi x) = cos(2 pi x) / (2 pi); the symbol at +-1 is +-i/(2 pi)
  const SpectralField p = apply_pd(sine_field(g));
  const SpectralField expect = (1.0 / (2.0 * pi)) * cosine_field(g);
  CHECK(oracles::linf_diff(p, expect) < 1e-13);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(mean(apply_pd(random_field(g, 20, rng)))) < 1e-14);
  }
}

TEST_CASE("helmholtz inverse is the resolvent of mu - dxx") {
  const PeriodicGrid g(64);
  const SpectralField one = SpectralField::constant(g, 1.0);
  CHECK(oracles::linf_diff(helmholtz_inverse(one), one) < 1e-14);

  const SpectralField c = cosine_field(g);
  const SpectralField h = helmholtz_inverse(c);
  CHECK(oracles::linf_diff(h, (1.0 / (4.0 * pi * pi)) * c) < 1e-14);
}

TEST_CASE("P(D) equals the derivative of the helmholtz inverse") {
  const PeriodicGrid g(256);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const SpectralField f = random_field(g, 100, rng);
    const SpectralField lhs = apply_pd(f);
    const SpectralField rhs = derivative(helmholtz_inverse(f), 1);
    CHECK(oracles::linf_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("off-grid evaluation extends the interpolant") {
  const PeriodicGrid g(64);
  const SpectralField s = sine_field(g);
  CHECK(evaluate_offgrid(s, 0.25) == doctest::Approx(1.0).epsilon(1e-13));

  // interpolation property at the grid points
  std::mt19937_64 rng(23);
  const SpectralField f = random_field(g, 30, rng);
  for (std::size_t j = 0; j < g.size(); j += 7) {
    CHECK(evaluate_offgrid(f, g.point(j)) ==
          doctest::Approx(f.value(j)).epsilon(1e-12));
  }
  // periodicity + closed form off the grid
  const SpectralField c = cosine_field(g);
  CHECK(evaluate_offgrid(c, 1.3) ==
        doctest::Approx(std::cos(2.6 * pi)).epsilon(1e-13));
  // agreement with the naive synthesis on random data
  const auto coeffs = forward_transform(f);
  for (double y : {0.013, 0.4477, 0.991, -0.2}) {
    CHECK(evaluate_offgrid(f, y) ==
          doctest::Approx(oracles::naive_eval(coeffs, y)).epsilon(1e-11));
  }
}

TEST_CASE("multiplier operations are linear") {
  const PeriodicGrid g(128);
  std::mt19937_64 rng(29);
  const SpectralField f = random_field(g, 40, rng);
  const SpectralField h = random_field(g, 40, rng);
  const double a = 1.7, b = -0.3;
  const SpectralField combo = a * f + b * h;
  CHECK(oracles::linf_diff(derivative(combo, 1),
                           a * derivative(f, 1) + b * derivative(h, 1)) <
        1e-12);
  CHECK(oracles::linf_diff(apply_pd(combo),
                           a * apply_pd(f) + b * apply_pd(h)) < 1e-12);
  CHECK(oracles::linf_diff(helmholtz_inverse(combo),
                           a * helmholtz_inverse(f) + b * helmholtz_inverse(h)) <
        1e-12);
}

TEST_CASE("periodic integration by parts holds under the quadrature") {
  const PeriodicGrid g(128);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    const SpectralField f = random_field(g, 42, rng);  // degree <= n/3
    const SpectralField prod = f * derivative(f, 1);
    CHECK(std::abs(mean(prod)) < 1e-10);
  }
}

TEST_CASE("dealiasing truncates above n/3") {
  const PeriodicGrid g(64);
  const SpectralField mixed = cosine_field(g, 5) + cosine_field(g, 30);
  const SpectralField cut = dealias(mixed);
  CHECK(std::abs(cut.coefficient(30)) < 1e-15);
  CHECK(std::abs(cut.coefficient(5) - mixed.coefficient(5)) < 1e-15);
}

TEST_CASE("conjugate symmetry survives multipliers with symmetric symbols") {
  const PeriodicGrid g(64);
  std::mt19937_64 rng(37);
  const SpectralField f = random_field(g, 30, rng);
  for (const auto* op : {"derivative", "pd"}) {
    const SpectralField out = op == std::string("derivative")
                                  ? derivative(f, 1)
                                  : apply_pd(f);
    const auto full = forward_transform(out);
    for (std::size_t b = 1; b < g.size() / 2; ++b) {
      CHECK(std::abs(full[g.size() - b] - std::conj(full[b])) < 1e-14);
    }
  }
}

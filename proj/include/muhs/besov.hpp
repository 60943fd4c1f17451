#pragma once

#include <limits>

#include "muhs/spectral.hpp"

namespace muhs {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Regularity / integrability / summation indices (s, p, r) of a Besov
/// norm. p and r live in [1, inf]; pass kInf for the sup variants.
struct BesovIndex {
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;
};

/// The smooth radial cutoff pair (chi, phi) of a dyadic Littlewood-Paley
/// partition: chi is 1 on [-3/4, 3/4] and supported in |xi| <= 4/3;
/// phi(xi) = chi(xi/2) - chi(xi) is supported in 3/4 <= |xi| <= 8/3, and
///
///   chi(xi) + sum_{q >= 0} phi(2^-q xi) = 1   for every real xi
///
/// holds exactly by telescoping. The decay profile is the normalized
/// antiderivative of the bump exp(-1/(1-t^2)).
class DyadicCutoffs {
 public:
  DyadicCutoffs();

  double chi(double xi) const;
  double phi(double xi) const { return chi(xi / 2.0) - chi(xi); }

 private:
  double smooth_step(double t) const;  // 0 at t<=-1, 1 at t>=1, monotone

  std::vector<double> cumulative_;  // integral of the bump up to each node
  double cell_;                     // node spacing
  double total_;                    // integral over [-1, 1]
};

/// The process-wide cutoff pair (immutable, shareable).
const DyadicCutoffs& standard_cutoffs();

/// Highest dyadic block index carried on an n-point grid: log2(n/2) + 1.
/// Blocks above it vanish identically on the representable band.
int max_block_index(const PeriodicGrid& grid);

/// Littlewood-Paley block Delta_q f. q = -1 applies chi(beta); q >= 0
/// applies phi(2^-q beta); q <= -2 is identically zero.
SpectralField block(int q, const SpectralField& f);

/// Partial sum S_q f = sum_{-1 <= p <= q-1} Delta_p f.
SpectralField low_pass(int q, const SpectralField& f);

/// Discrete L^p norm over one period: grid quadrature for p < inf
/// (exact for p = 2 on band-limited fields), max |f| for p = inf.
double lp_norm(const SpectralField& f, double p);

/// Besov norm: the l^r sum over q in [-1, Q_max] of 2^{qs} ||Delta_q f||_p.
double besov_norm(const SpectralField& f, const BesovIndex& idx);

/// Sobolev H^s norm with the classical weight (1 + 4 pi^2 beta^2)^s,
/// equivalent to besov_norm(f, {s, 2, 2}) up to fixed constants.
double sobolev_norm(const SpectralField& f, double s);

}  // namespace muhs

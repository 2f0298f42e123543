#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "xxz/scalars.hpp"

namespace xxz {

// Seeded draws over the generic parameter stratum.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  // modulus log-uniform in [lo, hi], phase uniform
  Complex generic(double lo = 0.5, double hi = 2.0);

  ModelParams model(int N);
  ModelParams homogeneous(int N);
  FactorizedBoundary factorized_boundary();
  BoundaryParams boundary() { return BoundaryParams::from_factorized(factorized_boundary()); }
  GaugeFrame frame(int m = 0);

  // Point with |u| in [0.6, 1.7] that keeps every denominator built from
  // u against `others` (roots and inhomogeneities) above `band`.
  Complex spectral_point(const Scalars& s, const std::vector<Complex>& others, double band = 1e-2);
  // M roots that are mutually generic and generic against v.
  std::vector<Complex> roots(int M, const Scalars& s, const std::vector<Complex>& v, double band = 1e-2);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// True when u keeps the usual denominators away from zero against `others`.
bool well_separated(const Scalars& s, Complex u, const std::vector<Complex>& others, double band);

}  // namespace xxz

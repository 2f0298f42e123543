#pragma once

#include <gtest/gtest.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "xxz/sampling.hpp"
#include "xxz/scalars.hpp"

namespace xxz::testing {

// A seeded generic chain: model, factorized boundary and a sampler positioned after them.
struct Draw {
  ModelParams model;
  BoundaryParams bp;
};

inline Draw draw(Sampler& s, int N) {
  Draw d;
  d.model = s.model(N);
  d.bp = s.boundary();
  return d;
}

inline void expect_close(Complex a, Complex b, double tol) {
  EXPECT_LE(std::abs(a - b), tol * (1.0 + std::max(std::abs(a), std::abs(b)))) << a << " vs " << b;
}

}  // namespace xxz::testing

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "xxz/boundary.hpp"

using namespace xxz;
using xxz::testing::expect_close;

TEST(KMatrices, AtUnitArgument) {
  Sampler rng(1);
  const BoundaryParams bp = rng.boundary();
  const KMatrixPair k(rng.generic(), bp);
  EXPECT_LE((k.minus(1.0) - (bp.nu_minus + bp.nu_plus) * Matrix::Identity(2, 2)).norm(), 1e-13);
}

TEST(KMatrices, Entries) {
  Sampler rng(2);
  const BoundaryParams bp = rng.boundary();
  const Complex q = rng.generic(), u = rng.generic();
  const KMatrixPair k(q, bp);
  const Matrix m = k.minus(u), p = k.plus(u);
  expect_close(m(0, 0), bp.nu_minus * u + bp.nu_plus / u, 1e-14);
  expect_close(m(1, 1), bp.nu_minus / u + bp.nu_plus * u, 1e-14);
  expect_close(m(0, 1), bp.tau * bp.tau * Scalars::c(u), 1e-14);
  expect_close(m(1, 0), bp.tau_tilde * bp.tau_tilde * Scalars::c(u), 1e-14);
  expect_close(p(0, 0), bp.eps_plus * q * u + bp.eps_minus / (q * u), 1e-14);
  expect_close(p(0, 1), bp.kappa_tilde * bp.kappa_tilde * Scalars::c(q * u), 1e-14);
  expect_close(p(1, 0), bp.kappa * bp.kappa * Scalars::c(q * u), 1e-14);
}

TEST(KMatrices, TriangularDegeneration) {
  Sampler rng(3);
  RawBoundary r = rng.boundary().raw();
  const Complex u = rng.generic();
  const Complex q = rng.generic();
  r.tau_tilde = 0.0;
  EXPECT_EQ(KMatrixPair(q, BoundaryParams::from_raw(r)).minus(u)(1, 0), Complex(0.0));
  // lower entry is linear in tau~^2
  std::vector<Complex> ratios;
  for (double t : {1e-1, 1e-2, 1e-3}) {
    r.tau_tilde = t;
    ratios.push_back(KMatrixPair(q, BoundaryParams::from_raw(r)).minus(u)(1, 0) / (t * t));
  }
  expect_close(ratios[0], ratios[1], 1e-13);
  expect_close(ratios[1], ratios[2], 1e-13);
}

TEST(KMatricesProperty, ReflectionEquations) {
  Sampler rng(50);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const KMatrixPair k(rng.generic(), rng.boundary());
    const Complex u1 = rng.generic(), u2 = rng.generic();
    worst = std::max({worst, k.check_reflection(u1, u2), k.check_dual_reflection(u1, u2)});
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(KMatrices, ReflectionAtEqualArguments) {
  Sampler rng(4);
  const KMatrixPair k(rng.generic(), rng.boundary());
  const Complex u = rng.generic();
  EXPECT_LE(k.check_reflection(u, u), 1e-12);
  EXPECT_LE(k.check_dual_reflection(u, u), 1e-12);
}

// Scaling nu_+ alone leaves a valid reflection matrix (the reflection equation
// does not tie nu+- to the factors) but breaks the factorized determinant.
TEST(KMatrices, CorruptedNuPlusDetected) {
  Sampler rng(5);
  const BoundaryParams good = rng.boundary();
  RawBoundary r = good.raw();
  r.nu_plus *= 1.01;
  const BoundaryParams bad = BoundaryParams::from_parts(r, good.factors());
  EXPECT_GT(bad.consistency_residual(), 1e-3);
  const KMatrixPair k(rng.generic(), bad);
  const Complex u = rng.generic();
  EXPECT_GT(k.q_det_minus(u).residual, 1e-3);
  EXPECT_LE(k.check_reflection(u, rng.generic()), 1e-12);
}

TEST(QDeterminant, Factorizations) {
  Sampler rng(6);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const KMatrixPair k(rng.generic(), rng.boundary());
    const Complex u = rng.generic();
    worst = std::max({worst, k.q_det_minus(u).residual, k.q_det_plus(u).residual});
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(QDeterminant, VanishesAtUnitArgument) {
  Sampler rng(7);
  const KMatrixPair k(rng.generic(), rng.boundary());
  EXPECT_LE(std::abs(k.q_det_minus(1.0).value), 1e-12);
}

TEST(HamiltonianCouplings, Degenerate) {
  Sampler rng(8);
  RawBoundary r = rng.boundary().raw();
  r.eps_minus = r.eps_plus;
  const Complex q = rng.generic();
  EXPECT_EQ(hamiltonian_couplings(BoundaryParams::from_raw(r), q).epsilon, Complex(0.0));
  r.kappa = 0.0;
  EXPECT_EQ(hamiltonian_couplings(BoundaryParams::from_raw(r), q).kappa_minus, Complex(0.0));
  r.eps_minus = -r.eps_plus;
  try {
    hamiltonian_couplings(BoundaryParams::from_raw(r), q);
    FAIL();
  } catch (const SingularPoint& e) {
    EXPECT_NE(std::string(e.what()).find("eps_plus + eps_minus"), std::string::npos);
  }
}

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "xxz/boundary.hpp"

using namespace xxz;
using xxz::testing::expect_close;

TEST(Scalars, BValues) {
  const Complex q{1.3, 0.4};
  const Scalars s(q);
  EXPECT_EQ(s.b(1.0), Complex(0.0));
  expect_close(s.b(q), 1.0, 1e-15);
  expect_close(s.b(q * q), q + 1.0 / q, 1e-15);
  EXPECT_THROW(s.b(0.0), ZeroArgument);
}

TEST(Scalars, CAndPhi) {
  const Complex q{0.8, -0.9};
  const Scalars s(q);
  EXPECT_EQ(Scalars::c(1.0), Complex(0.0));
  Sampler rng(3);
  for (int i = 0; i < 20; ++i) {
    const Complex u = rng.generic();
    expect_close(Scalars::c(u) + Scalars::c(1.0 / u), 0.0, 1e-14);
  }
  expect_close(s.phi(1.0), q + 1.0 / q, 1e-14);
  // b(q u^2) = 0 at u^2 = 1/q
  EXPECT_THROW(s.phi(std::sqrt(1.0 / q)), SingularPoint);
}

TEST(Scalars, WAtUnitArguments) {
  const Scalars s(2.0);
  expect_close(s.w(1.0, 1.0), -1.0, 1e-15);
}

TEST(Scalars, DenominatorGuardsNameTheFactor) {
  const Scalars s(Complex{1.1, 0.3});
  const Complex u{0.7, 0.2};
  for (auto which : {Structural::f, Structural::g, Structural::h, Structural::k}) {
    try {
      s.structural(which, u, u);
      FAIL() << "no throw for " << to_string(which);
    } catch (const SingularPoint& e) {
      EXPECT_NE(std::string(e.what()).find("b("), std::string::npos);
    }
  }
  const Complex v = 1.0 / (s.q() * u);
  EXPECT_THROW(s.w(u, v), SingularPoint);
  EXPECT_THROW(s.n(u, v), SingularPoint);
}

TEST(Scalars, NamesRoundTrip) {
  for (auto which : {Structural::f, Structural::g, Structural::w, Structural::h, Structural::k, Structural::n,
                     Structural::s, Structural::x, Structural::y, Structural::r, Structural::q_fn, Structural::G,
                     Structural::F, Structural::F_tilde}) {
    const auto back = structural_from_string(to_string(which));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, which);
  }
  EXPECT_FALSE(structural_from_string("nope").has_value());
}

TEST(Scalars, StructuralMatchesDirectFormulas) {
  Sampler rng(11);
  const Complex q = rng.generic();
  const Scalars s(q);
  auto b = [&](Complex x) { return (x - 1.0 / x) / (q - 1.0 / q); };
  for (int i = 0; i < 50; ++i) {
    const Complex u = rng.generic(), v = rng.generic();
    if (!well_separated(s, u, {v}, 1e-2)) continue;
    expect_close(s.G(u, v), 1.0 / (b(u / v) * b(q * u * v)), 1e-12);
    expect_close(s.F_tilde(u, v), (v / u) * s.F(u, v), 1e-12);
    expect_close(s.q_fn(u, v), b(u * v) * s.G(u, v), 1e-12);
    expect_close(s.structural(Structural::h, u, v), s.h(u, v), 0.0);
  }
}

// f(u,v) b(v/u) b(quv) reproduces b(qv/u) b(uv)
TEST(ScalarsProperty, FClearedOfDenominators) {
  Sampler rng(2024);
  int checked = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const Complex q = rng.generic(), u = rng.generic(), v = rng.generic();
    const Scalars s(q);
    Complex f;
    try {
      f = s.f(u, v);
    } catch (const SingularPoint&) {
      continue;
    }
    worst = std::max(worst, relative_residual(f * s.b(v / u) * s.b(q * u * v), s.b(q * v / u) * s.b(u * v)));
    ++checked;
  }
  EXPECT_GT(checked, 990000);
  EXPECT_LE(worst, 1e-12);
}

TEST(Scalars, GammaZeros) {
  const Complex q{1.2, 0.5};
  GaugeFrame fr{0.7, 0.7, 0};
  EXPECT_EQ(gamma(1.0, 0, fr, q), Complex(0.0));
  fr = GaugeFrame{Complex{0.4, 1.1}, Complex{-0.6, 0.3}, 2};
  const Complex u = std::sqrt(fr.beta * ipow(q, 2 * fr.m) / fr.alpha);
  EXPECT_LE(std::abs(gamma(u, fr.m, fr, q)), 1e-14);
  EXPECT_GT(std::abs(gamma(1.3 * u, fr.m, fr, q)), 1e-3);
}

TEST(Scalars, DegenerateFrameRejected) {
  const Complex q{1.2, 0.5};
  const int m = 1;
  const GaugeFrame fr{kI * ipow(q, m), kI * ipow(q, -m), m};
  EXPECT_LE(std::abs(gamma_m(m, fr, q)), 1e-14);
  EXPECT_THROW(validate_window(fr, q, m, 1), SingularPoint);
}

TEST(Scalars, IntegerPower) {
  const Complex z{0.3, 1.7};
  expect_close(ipow(z, 5), z * z * z * z * z, 1e-15);
  expect_close(ipow(z, -3), 1.0 / (z * z * z), 1e-15);
  EXPECT_EQ(ipow(z, 0), Complex(1.0));
}

TEST(BoundaryScalars, Values) {
  Sampler rng(5);
  const BoundaryParams bp = rng.boundary();
  const BoundaryFunctions bf(Complex{1.1, 0.2}, bp);
  expect_close(bf.k_minus(1.0), bp.nu_minus + bp.nu_plus, 1e-14);
  EXPECT_LE(std::abs(bf.k_tilde_minus(kI / bp.mu)), 1e-13);
  EXPECT_LE(std::abs(bf.k_tilde_plus(kI / bp.xi_tilde)), 1e-13);
  EXPECT_EQ(bf.value(BoundaryScalar::k_plus, 0.9), bf.k_plus(0.9));
}

TEST(BoundaryScalarsProperty, KIdentities) {
  Sampler rng(77);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Complex q = rng.generic();
    const BoundaryFunctions bf(q, rng.boundary());
    const Complex u = rng.generic(), v = rng.generic();
    if (!well_separated(bf.scalars(), u, {v}, 1e-2)) continue;
    for (double r : k_identities(bf, u, v).values) worst = std::max(worst, r);
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(BoundaryScalarsProperty, FunctionalRelations) {
  Sampler rng(78);
  double worst = 0.0;
  int done = 0;
  for (int i = 0; i < 100; ++i) {
    const Complex q = rng.generic();
    const BoundaryParams bp = rng.boundary();
    const GaugeFrame fr = rng.frame();
    const int m = static_cast<int>(rng.uniform(-4, 4));
    const BoundaryFunctions bf(q, bp);
    const DynamicalCoefficients dc(q, bp, fr);
    const Complex u = rng.generic(), v = rng.generic();
    if (!well_separated(bf.scalars(), u, {v}, 1e-2)) continue;
    try {
      const auto r = functional_relations(bf, dc, u, v, m);
      for (int k = 0; k < 4; ++k) worst = std::max({worst, r.plain[k], r.hatted[k]});
      ++done;
    } catch (const SingularPoint&) {
    }
  }
  EXPECT_GT(done, 90);
  EXPECT_LE(worst, 1e-11);
}

TEST(BoundaryParamsProperty, SwapSymmetry) {
  Sampler rng(9);
  for (int i = 0; i < 20; ++i) {
    FactorizedBoundary f = rng.factorized_boundary();
    const RawBoundary r0 = BoundaryParams::from_factorized(f).raw();
    FactorizedBoundary g = f;
    std::swap(g.mu, g.mu_tilde);
    std::swap(g.xi, g.xi_tilde);
    const RawBoundary r1 = BoundaryParams::from_factorized(g).raw();
    FactorizedBoundary h = f;
    h.mu = 1.0 / f.mu;
    h.mu_tilde = 1.0 / f.mu_tilde;
    h.xi = 1.0 / f.xi;
    h.xi_tilde = 1.0 / f.xi_tilde;
    const RawBoundary r2 = BoundaryParams::from_factorized(h).raw();
    for (const RawBoundary* r : {&r1, &r2}) {
      expect_close(r->nu_minus, r0.nu_minus, 1e-13);
      expect_close(r->nu_plus, r0.nu_plus, 1e-13);
      expect_close(r->eps_minus, r0.eps_minus, 1e-13);
      expect_close(r->eps_plus, r0.eps_plus, 1e-13);
    }
  }
}

TEST(BoundaryParams, RawRoundTrip) {
  Sampler rng(10);
  for (int i = 0; i < 20; ++i) {
    const BoundaryParams a = rng.boundary();
    const BoundaryParams b = BoundaryParams::from_raw(a.raw());
    ASSERT_TRUE(b.factorized());
    EXPECT_LE(b.consistency_residual(), 1e-12);
    expect_close(b.raw().nu_minus, a.nu_minus, 1e-12);
    expect_close(b.raw().eps_plus, a.eps_plus, 1e-12);
    EXPECT_GE(std::abs(b.mu / b.mu_tilde), 1.0 - 1e-12);
  }
}

TEST(BoundaryParams, UnfactorizedSideRefusesTildeFunctions) {
  Sampler rng(12);
  RawBoundary r = rng.boundary().raw();
  r.tau_tilde = 0.0;
  const BoundaryParams bp = BoundaryParams::from_raw(r);
  EXPECT_FALSE(bp.right_factorized);
  EXPECT_THROW(bp.factors(), InvalidParams);
  EXPECT_THROW(BoundaryFunctions(1.5, bp).k_tilde_minus(0.8), InvalidParams);
}

TEST(BoundaryParams, ReciprocalPairRoot) {
  Sampler rng(13);
  for (int i = 0; i < 20; ++i) {
    const Complex s = rng.generic(0.1, 10.0);
    const Complex x = reciprocal_pair_root(s);
    expect_close(x + 1.0 / x, s, 1e-12);
    EXPECT_GE(std::abs(x), 1.0 - 1e-12);
  }
}

TEST(DynamicalCoefficients, ZerosAtSpecialFrames) {
  Sampler rng(14);
  const Complex q = rng.generic();
  const BoundaryParams bp = rng.boundary();
  const int m = 3;
  const Complex left = kI * bp.kappa_tilde * bp.xi / (bp.kappa * bp.xi_tilde);
  GaugeFrame fr = rng.frame(m);
  fr.alpha = -ipow(q, m + 1) * left;
  EXPECT_LE(std::abs(DynamicalCoefficients(q, bp, fr).zeta(m)), 1e-12);

  fr = rng.frame(m);
  fr.beta = -kI * ipow(q, -m - 1) * bp.kappa_tilde * bp.xi_tilde / (bp.kappa * bp.xi);
  EXPECT_LE(std::abs(DynamicalCoefficients(q, bp, fr).delta(m)), 1e-12);

  fr = rng.frame(m);
  const Complex r = bp.xi_tilde / bp.xi;
  fr.beta = fr.alpha * r * r * ipow(q, -2 * m);
  EXPECT_LE(std::abs(DynamicalCoefficients(q, bp, fr).chi(m)), 1e-12);
}

TEST(DynamicalCoefficients, BarredAndHatted) {
  Sampler rng(15);
  const Complex q = rng.generic();
  const DynamicalCoefficients dc(q, rng.boundary(), rng.frame());
  for (int m = -2; m <= 2; ++m) {
    expect_close(dc.chi_bar(m), dc.chi(m) - dc.delta(m) * dc.rho(m), 1e-14);
    expect_close(dc.chi_hat(m), dc.chi(m) * dc.gamma_m(m - 1) / dc.gamma_m(m + 1), 1e-14);
    expect_close(dc.value(DynCoeff::rho_hat, m), dc.rho_hat(m), 0.0);
  }
}

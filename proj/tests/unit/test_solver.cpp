#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "xxz/limits.hpp"
#include "xxz/solver.hpp"

using namespace xxz;
using xxz::testing::draw;

namespace {

MultiStartOptions quick(std::uint64_t seed, int starts = 120) {
  MultiStartOptions o;
  o.seed = seed;
  o.starts = starts;
  return o;
}

// Local minima of |reduced residual| on a log-polar grid, polished by a scalar secant iteration.
std::vector<Complex> scan_one_site(const BetheSolver& solver) {
  const int nr = 160, nt = 320;
  const double lo = std::log(0.15), hi = std::log(6.0);
  auto value = [&](Complex u) {
    try {
      return std::abs(solver.reduced_residuals({u})[0]);
    } catch (const SingularPoint&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  auto at = [&](int i, int j) {
    return std::polar(std::exp(lo + (hi - lo) * i / (nr - 1)), 2 * std::numbers::pi * j / nt);
  };
  std::vector<double> grid(nr * nt);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) grid[i * nt + j] = value(at(i, j));
  std::vector<Complex> found;
  for (int i = 1; i + 1 < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      const double c = grid[i * nt + j];
      bool minimum = std::isfinite(c);
      for (int di = -1; di <= 1 && minimum; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && grid[(i + di) * nt + (j + dj + nt) % nt] < c) minimum = false;
      if (!minimum) continue;
      Complex x0 = at(i, j), x1 = x0 * Complex(1.0 + 1e-3, 1e-3);
      try {
        Complex f0 = solver.reduced_residuals({x0})[0], f1 = solver.reduced_residuals({x1})[0];
        for (int k = 0; k < 60 && std::abs(f1) > 0.0 && std::abs(x1 - x0) > 1e-15 * std::abs(x1); ++k) {
          const Complex x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
          x0 = x1;
          f0 = f1;
          x1 = x2;
          f1 = solver.reduced_residuals({x1})[0];
        }
        if (solver.residual_max({x1}) > 1e-10) continue;
      } catch (const SingularPoint&) {
        continue;
      }
      bool fresh = true;
      for (Complex y : found) fresh = fresh && std::abs(y - x1) > 1e-7 * std::abs(x1);
      if (fresh) found.push_back(x1);
    }
  return found;
}

}  // namespace

TEST(RootSets, CanonicalAndEquality) {
  const std::vector<Complex> a{Complex(2, 0), Complex(0, 1), Complex(-1, 0)};
  const auto c = canonical(a);
  EXPECT_EQ(c[2], Complex(2, 0));
  EXPECT_TRUE(same_root_set(a, {Complex(-1, 0), Complex(2, 0), Complex(0, 1)}));
  EXPECT_FALSE(same_root_set(a, {Complex(-1, 0), Complex(2, 0), Complex(0, 1.001)}));
  const Complex q{1.3, 0.2};
  const std::vector<Complex> b{-1.0 / (q * a[0]), a[1], -a[2]};
  EXPECT_TRUE(related_by_crossing(a, b, q));
}

TEST(Solver, OneSiteScanAgreesWithMultiStart) {
  Sampler rng(1);
  const auto d = draw(rng, 1);
  const BetheSolver solver(OpenChain(d.model, d.bp));
  const auto scan = scan_one_site(solver);
  const MultiStartResult ms = multi_start(solver, quick(3, 200));
  ASSERT_FALSE(ms.distinct.empty());
  for (const SolveReport& r : ms.distinct) {
    bool seen = false;
    for (Complex x : scan) seen = seen || std::abs(x - r.roots[0]) <= 1e-7 * std::abs(x);
    EXPECT_TRUE(seen) << r.roots[0];
  }
}

// Both eigenvalues of the 2x2 transfer matrix from the quadratic formula.
TEST(Solver, OneSiteSpectrumByQuadraticFormula) {
  Sampler rng(2);
  const auto d = draw(rng, 1);
  const OpenChain chain(d.model, d.bp);
  const BetheSolver solver(chain);
  const MultiStartResult ms = multi_start(solver, quick(4, 200));
  EXPECT_EQ(ms.dimension, 2);
  EXPECT_EQ(ms.levels, 2);
  const Complex u0 = probe_points(d.model, 4)[0];
  const Matrix t = chain.transfer_matrix(u0);
  const Complex tr = t.trace(), det = t.determinant();
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex ev[2] = {(tr + disc) / 2.0, (tr - disc) / 2.0};
  bool hit[2] = {false, false};
  for (const SolveReport& r : ms.distinct) {
    if (!r.matched_eigenvalue_index) continue;
    const Complex L = solver.system().spectral().Lambda(u0, r.roots);
    for (int k = 0; k < 2; ++k)
      if (std::abs(L - ev[k]) <= 1e-9 * (1.0 + std::abs(L))) hit[k] = true;
  }
  EXPECT_TRUE(hit[0]);
  EXPECT_TRUE(hit[1]);
}

TEST(Solver, TwoSitesMatchedSetsAreEigenvectors) {
  Sampler rng(3);
  const auto d = draw(rng, 2);
  const BetheSolver solver(OpenChain(d.model, d.bp));
  const MultiStartResult ms = multi_start(solver, quick(5, 200));
  EXPECT_EQ(ms.dimension, 4);
  // this seeded draw reaches every level
  EXPECT_EQ(ms.levels, 4);
  for (const SolveReport& r : ms.distinct) {
    if (!r.matched_eigenvalue_index) continue;
    EXPECT_LE(r.residual_max, 1e-10);
    EXPECT_LE(r.relative_gap, 1e-8);
    EXPECT_LE(r.eigvec_angle, 1e-7);
  }
}

TEST(Solver, ResidualsPermuteWithRoots) {
  Sampler rng(4);
  const auto d = draw(rng, 3);
  const BetheSolver solver(OpenChain(d.model, d.bp));
  const auto us = rng.roots(3, solver.chain().scalars(), d.model.v);
  const auto e = solver.residuals(us);
  const auto f = solver.residuals({us[2], us[0], us[1]});
  EXPECT_LE(std::abs(f[0] - e[2]), 1e-12 * (1.0 + std::abs(e[2])));
  EXPECT_LE(std::abs(f[1] - e[0]), 1e-12 * (1.0 + std::abs(e[0])));
}

TEST(Solver, FixedPointAndBasin) {
  Sampler rng(5);
  const auto d = draw(rng, 2);
  const BetheSolver solver(OpenChain(d.model, d.bp));
  const MultiStartResult ms = multi_start(solver, quick(6));
  ASSERT_FALSE(ms.distinct.empty());
  const auto roots = ms.distinct.front().roots;
  const SolveReport again = solver.newton(roots);
  EXPECT_TRUE(again.converged);
  EXPECT_LE(again.iterations, 1);
  std::vector<Complex> nudged = roots;
  for (Complex& u : nudged) u *= Complex(1.0 + 1e-3, -1e-3);
  const SolveReport back = solver.newton(nudged);
  EXPECT_TRUE(back.converged);
  EXPECT_TRUE(same_root_set(back.roots, roots));
  EXPECT_EQ(back.fd_step, 1e-6);
}

TEST(Solver, CoincidentStartIsStuck) {
  Sampler rng(6);
  const auto d = draw(rng, 2);
  const BetheSolver solver(OpenChain(d.model, d.bp));
  const Complex u{0.8, 0.3};
  EXPECT_THROW(solver.newton({u, u}), StuckAtSingularLocus);
  EXPECT_THROW(solver.newton({u}), InvalidParams);
}

TEST(Solver, MultiStartIndependentOfThreadCount) {
  Sampler rng(7);
  const auto d = draw(rng, 2);
  const BetheSolver solver(OpenChain(d.model, d.bp));
  MultiStartOptions a = quick(8, 60), b = a;
  a.threads = 1;
  b.threads = 4;
  const MultiStartResult ra = multi_start(solver, a), rb = multi_start(solver, b);
  ASSERT_EQ(ra.distinct.size(), rb.distinct.size());
  for (size_t i = 0; i < ra.distinct.size(); ++i) EXPECT_EQ(ra.distinct[i].roots, rb.distinct[i].roots);
  EXPECT_EQ(ra.levels, rb.levels);
}

TEST(Homotopy, TrivialPathKeepsRoots) {
  Sampler rng(9);
  const auto d = draw(rng, 2);
  const BoundaryParams start = impose_constraint_C(d.bp, d.model.q, 2, 2);
  const BetheSolver solver(OpenChain(d.model, start));
  const MultiStartResult ms = multi_start(solver, quick(10));
  ASSERT_FALSE(ms.distinct.empty());
  const auto roots = ms.distinct.front().roots;
  const auto out = homotopy_solve(d.model, start, start, {roots});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(same_root_set(out[0].roots, roots, 1e-8));
}

TEST(Homotopy, StartMustBeConstrained) {
  Sampler rng(10);
  const auto d = draw(rng, 2);
  EXPECT_FALSE(on_constrained_locus(d.bp, d.model.q, 2));
  EXPECT_THROW(homotopy_solve(d.model, d.bp, d.bp, {}), InvalidParams);
}

TEST(Homotopy, TracksEveryLevelAndReverses) {
  Sampler rng(11);
  const int N = 2;
  const auto d = draw(rng, N);
  const BoundaryParams start = impose_constraint_C(d.bp, d.model.q, N, N);
  ASSERT_TRUE(on_constrained_locus(start, d.model.q, N));
  const BetheSolver start_solver(OpenChain(d.model, start));
  const MultiStartResult sm = multi_start(start_solver, quick(12, 200));
  std::vector<std::vector<Complex>> seeds;
  std::vector<int> levels;
  for (const SolveReport& r : sm.distinct) {
    if (!r.matched_eigenvalue_index) continue;
    if (std::find(levels.begin(), levels.end(), *r.matched_eigenvalue_index) != levels.end()) continue;
    levels.push_back(*r.matched_eigenvalue_index);
    seeds.push_back(r.roots);
  }
  ASSERT_FALSE(seeds.empty());
  const auto tracked = homotopy_solve(d.model, start, d.bp, seeds);
  ASSERT_EQ(tracked.size(), seeds.size());

  const OpenChain target(d.model, d.bp);
  const BetheSolver solver(target);
  const SpectrumReference ref(target, probe_points(d.model, 13));
  std::vector<int> reached;
  for (const SolveReport& r : tracked) {
    EXPECT_LE(r.residual_max, 1e-9);
    EXPECT_FALSE(r.homotopy_path.empty());
    EXPECT_EQ(r.homotopy_path.back(), 1.0);
    const SolveReport polished = solver.newton(r.roots);
    EXPECT_TRUE(same_root_set(polished.roots, r.roots, 1e-8));
    const SpectrumMatch m = solver.spectrum_match(r.roots, ref);
    ASSERT_TRUE(m.index.has_value());
    EXPECT_LE(m.relative_gap, 1e-8);
    reached.push_back(*m.index);
  }
  std::sort(reached.begin(), reached.end());
  EXPECT_EQ(std::unique(reached.begin(), reached.end()), reached.end());

  std::vector<std::vector<Complex>> ends;
  for (const SolveReport& r : tracked) ends.push_back(r.roots);
  HomotopyOptions back;
  back.require_constrained_start = false;
  const auto returned = homotopy_solve(d.model, d.bp, start, ends, 0, back);
  for (size_t i = 0; i < seeds.size(); ++i) EXPECT_TRUE(same_root_set(returned[i].roots, seeds[i], 1e-8));
}

TEST(Homotopy, InterpolationEndpoints) {
  Sampler rng(14);
  const BoundaryParams a = rng.boundary(), b = rng.boundary();
  EXPECT_LE(std::abs(interpolate_boundary(a, b, 0.0).mu - a.mu), 1e-14);
  EXPECT_LE(std::abs(interpolate_boundary(a, b, 1.0).xi_tilde - b.xi_tilde), 1e-13 * std::abs(b.xi_tilde));
}

TEST(ParallelMap, OrderAndErrors) {
  const auto sq = parallel_map<int>(100, [](size_t i) { return static_cast<int>(i * i); }, 4);
  for (size_t i = 0; i < sq.size(); ++i) EXPECT_EQ(sq[i], static_cast<int>(i * i));
  EXPECT_THROW(parallel_map<int>(
                   10,
                   [](size_t i) -> int {
                     if (i == 7) throw Diverged("x");
                     return 0;
                   },
                   3),
               Diverged);
}

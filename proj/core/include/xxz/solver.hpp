#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "xxz/maba.hpp"

namespace xxz {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class StuckAtSingularLocus : public SolverError {
 public:
  using SolverError::SolverError;
};
class Diverged : public SolverError {
 public:
  using SolverError::SolverError;
};
class SingularJacobian : public SolverError {
 public:
  using SolverError::SolverError;
};
class AmbiguousMatch : public SolverError {
 public:
  using SolverError::SolverError;
};
class PathCollision : public SolverError {
 public:
  using SolverError::SolverError;
};
class StepUnderflow : public SolverError {
 public:
  using SolverError::SolverError;
};

struct NewtonOptions {
  double tol = 1e-10;       // on the normalized residual
  int max_iter = 80;
  double fd_step = 1e-6;    // relative central-difference step
  double min_damping = 1.0 / 1024;
  double escape_radius = 1e6;  // |u| outside [1/r, r] counts as divergence
};

// sorted by modulus, then phase
std::vector<Complex> canonical(std::vector<Complex> us);
// equal as multisets within `tol` relative per root
bool same_root_set(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol = 1e-7);
// root set mapped by u -> 1/(q u) or u -> -u at every root, canonicalized
bool related_by_crossing(const std::vector<Complex>& a, const std::vector<Complex>& b, Complex q, double tol = 1e-7);

struct SpectrumMatch {
  std::optional<int> index;  // unset when the probes disagree
  double eigen_gap = 0.0;    // |Lambda - eigenvalue|, worst probe
  double relative_gap = 0.0;  // eigen_gap / (1 + |Lambda|), worst probe
  double angle = 0.0;        // between Psi and the matched eigenvector, radians
};

struct SolveReport {
  std::vector<Complex> roots;  // canonical order
  double residual_max = 0.0;
  bool converged = false;
  std::optional<int> matched_eigenvalue_index;
  double eigen_gap = 0.0;
  double relative_gap = 0.0;
  double eigvec_angle = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  double fd_step = 0.0;
  double min_damping = 0.0;
  std::vector<double> homotopy_path;  // accepted path parameters, empty for direct solves
};

// Dense eigen-decomposition of t(u) at the probe points; eigenvectors of the
// first probe fix the level labels.
class SpectrumReference {
 public:
  SpectrumReference(const OpenChain& chain, std::array<Complex, 3> probes);

  const std::array<Complex, 3>& probes() const { return probes_; }
  // eigenvalues of level k at each probe
  const std::vector<std::array<Complex, 3>>& levels() const { return levels_; }
  const Matrix& eigenvectors() const { return vectors_; }
  int size() const { return static_cast<int>(levels_.size()); }

 private:
  std::array<Complex, 3> probes_;
  Matrix vectors_;
  std::vector<std::array<Complex, 3>> levels_;
};

// Three generic probe points derived from `seed`.
std::array<Complex, 3> probe_points(const ModelParams& model, std::uint64_t seed);

class BetheSolver {
 public:
  BetheSolver(const OpenChain& chain, int m0 = 0, NewtonOptions opts = {});

  const OpenChain& chain() const { return chain_; }
  const BetheSystem& system() const { return sys_; }
  const NewtonOptions& options() const { return opts_; }
  int N() const { return chain_.N(); }

  // E^N(u_i, ubar_i)
  std::vector<Complex> residuals(const std::vector<Complex>& us) const;
  // E^N / (b(u_i^2) phi(u_i)), the map Newton works on
  std::vector<Complex> reduced_residuals(const std::vector<Complex>& us) const;
  // max_i |E_i| / (|Lambda_gd| + |Lambda_g|) at u_i
  double residual_max(const std::vector<Complex>& us) const;

  // Damped Newton from `start`.
  SolveReport newton(const std::vector<Complex>& start) const;

  // Throws AmbiguousMatch when the matched level is degenerate within 1e-8.
  SpectrumMatch spectrum_match(const std::vector<Complex>& us, const SpectrumReference& ref) const;

 private:
  OpenChain chain_;
  BetheSystem sys_;
  NewtonOptions opts_;
};

struct MultiStartResult {
  std::vector<SolveReport> distinct;  // converged, deduplicated modulo permutation
  int starts = 0;
  int converged = 0;
  int failures = 0;   // Newton threw or hit the iteration cap
  int matched = 0;    // distinct sets with a consistent spectrum match
  int levels = 0;     // distinct eigenvalue levels reached
  int dimension = 0;  // 2^N
  int crossing_pairs = 0;  // pairs of distinct sets related by u -> 1/(qu) or u -> -u
  int orbits = 0;          // distinct sets modulo those per-root maps
};

struct MultiStartOptions {
  int starts = 200;
  std::uint64_t seed = 1;
  double lo = 0.15, hi = 6.0;  // start moduli, log-uniform
  double dedup_tol = 1e-7;
  double gap_tol = 1e-8;       // relative eigen-gap for a match
  unsigned threads = 0;        // 0: hardware concurrency
};

MultiStartResult multi_start(const BetheSolver& solver, const MultiStartOptions& opts = {});

struct HomotopyOptions {
  double initial_step = 0.05;
  double min_step = 1e-6;
  double max_step = 0.25;
  int corrector_iter = 12;
  double collision_tol = 1e-7;
  bool require_constrained_start = true;
};

// p(s) = p0 (p1 / p0)^s for each factorized boundary parameter
BoundaryParams interpolate_boundary(const BoundaryParams& start, const BoundaryParams& target, double s);

// Tracks each start root set from `start` to `target`. The start must lie on a
// constrained locus unless the option is cleared.
std::vector<SolveReport> homotopy_solve(const ModelParams& model, const BoundaryParams& start,
                                        const BoundaryParams& target,
                                        const std::vector<std::vector<Complex>>& start_roots, int m0 = 0,
                                        const HomotopyOptions& opts = {});

// True when (constraint B at some M) or (constraint C at some M_hat) holds within tol.
bool on_constrained_locus(const BoundaryParams& bp, Complex q, int N, double tol = 1e-10);

// Runs fn(i) for i in [0, n) on a pool of threads; results are stored by index.
template <class T>
std::vector<T> parallel_map(size_t n, const std::function<T(size_t)>& fn, unsigned threads = 0) {
  std::vector<T> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace xxz

#include "xxz/solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "xxz/limits.hpp"
#include "xxz/sampling.hpp"

namespace xxz {

std::vector<Complex> canonical(std::vector<Complex> us) {
  std::sort(us.begin(), us.end(), [](Complex a, Complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-9 * std::max(ma, mb)) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
  return us;
}

bool same_root_set(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (Complex x : a) {
    bool found = false;
    for (size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && std::abs(x - b[j]) <= tol * std::max(1.0, std::abs(x))) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool related_by_crossing(const std::vector<Complex>& a, const std::vector<Complex>& b, Complex q, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (Complex x : a) {
    const Complex images[4] = {x, -x, 1.0 / (q * x), -1.0 / (q * x)};
    bool found = false;
    for (size_t j = 0; j < b.size() && !found; ++j) {
      if (used[j]) continue;
      for (Complex y : images) {
        if (std::abs(y - b[j]) <= tol * std::max(1.0, std::abs(y))) {
          used[j] = true;
          found = true;
          break;
        }
      }
    }
    if (!found) return false;
  }
  return true;
}

std::array<Complex, 3> probe_points(const ModelParams& model, std::uint64_t seed) {
  Sampler sampler(seed ^ 0x9e3779b97f4a7c15ULL);
  const Scalars s(model.q);
  return {sampler.spectral_point(s, model.v), sampler.spectral_point(s, model.v), sampler.spectral_point(s, model.v)};
}

SpectrumReference::SpectrumReference(const OpenChain& chain, std::array<Complex, 3> probes) : probes_(probes) {
  Eigen::ComplexEigenSolver<Matrix> es(chain.transfer_matrix(probes_[0]));
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen-decomposition of t(u) failed");
  const Eigen::Index n = es.eigenvalues().size();
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index k = 0; k < n; ++k) order[k] = k;
  const auto& ev = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
    return ev(a).imag() < ev(b).imag();
  });
  vectors_.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) vectors_.col(k) = es.eigenvectors().col(order[k]).normalized();
  const Matrix t1 = chain.transfer_matrix(probes_[1]);
  const Matrix t2 = chain.transfer_matrix(probes_[2]);
  levels_.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vector v = vectors_.col(k);
    levels_[k] = {ev(order[k]), v.dot(t1 * v), v.dot(t2 * v)};
  }
}

BetheSolver::BetheSolver(const OpenChain& chain, int m0, NewtonOptions opts)
    : chain_(chain), sys_(chain, m0, chain.N()), opts_(opts) {}

std::vector<Complex> BetheSolver::residuals(const std::vector<Complex>& us) const {
  std::vector<Complex> out(us.size());
  for (size_t i = 0; i < us.size(); ++i) out[i] = sys_.spectral().E(i, us);
  return out;
}

std::vector<Complex> BetheSolver::reduced_residuals(const std::vector<Complex>& us) const {
  std::vector<Complex> out(us.size());
  for (size_t i = 0; i < us.size(); ++i) out[i] = sys_.spectral().reduced(i, us);
  return out;
}

double BetheSolver::residual_max(const std::vector<Complex>& us) const {
  double r = 0.0;
  for (size_t i = 0; i < us.size(); ++i) r = std::max(r, sys_.spectral().normalized_residual(i, us));
  return r;
}

namespace {

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (Complex x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

SolveReport BetheSolver::newton(const std::vector<Complex>& start) const {
  const int n = N();
  if (static_cast<int>(start.size()) != n) throw InvalidParams("newton needs exactly N starting roots");
  SolveReport rep;
  rep.fd_step = opts_.fd_step;
  rep.min_damping = opts_.min_damping;

  std::vector<Complex> us = start;
  std::vector<Complex> F;
  double r = 0.0;
  auto evaluate = [&](const std::vector<Complex>& x) {
    F = reduced_residuals(x);
    r = residual_max(x);
  };
  try {
    evaluate(us);
  } catch (const SingularPoint& e) {
    throw StuckAtSingularLocus(std::string("start lies on a singular locus: ") + e.what());
  }
  auto trial_norm = [&](const std::vector<Complex>& x) {
    try {
      const double m = max_abs(reduced_residuals(x));
      return std::isfinite(m) ? m : std::numeric_limits<double>::infinity();
    } catch (const SingularPoint&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  int it = 0;
  for (; it < opts_.max_iter && !(r <= opts_.tol); ++it) {
    Matrix J(n, n);
    try {
      for (int j = 0; j < n; ++j) {
        const double h = opts_.fd_step * std::max(std::abs(us[j]), 1e-3);
        std::vector<Complex> up = us, dn = us;
        up[j] += h;
        dn[j] -= h;
        const std::vector<Complex> fu = reduced_residuals(up), fd = reduced_residuals(dn);
        for (int i = 0; i < n; ++i) J(i, j) = (fu[i] - fd[i]) / (2.0 * h);
      }
    } catch (const SingularPoint& e) {
      throw StuckAtSingularLocus(std::string("iterate touches a singular locus: ") + e.what());
    }
    Eigen::FullPivLU<Matrix> lu(J);
    if (!J.allFinite() || lu.rank() < n) throw SingularJacobian("Jacobian of the Bethe equations is singular");
    Vector rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = -F[i];
    const Vector step = lu.solve(rhs);

    const double f0 = max_abs(F);
    double lambda = 1.0;
    std::vector<Complex> trial(n);
    for (;;) {
      for (int i = 0; i < n; ++i) trial[i] = us[i] + lambda * step(i);
      if (trial_norm(trial) < f0 || lambda * 0.5 < opts_.min_damping) break;
      lambda *= 0.5;
    }
    for (Complex x : trial) {
      const double m = std::abs(x);
      if (!std::isfinite(m) || m > opts_.escape_radius || m < 1.0 / opts_.escape_radius)
        throw Diverged("a root left the annulus [1/R, R]");
    }
    us = trial;
    try {
      evaluate(us);
    } catch (const SingularPoint& e) {
      throw StuckAtSingularLocus(std::string("iterate landed on a singular locus: ") + e.what());
    }
    if (!std::isfinite(r)) throw Diverged("residual is not finite");
  }
  rep.iterations = it;
  rep.roots = canonical(us);
  rep.residual_max = r;
  rep.converged = r <= opts_.tol;
  return rep;
}

SpectrumMatch BetheSolver::spectrum_match(const std::vector<Complex>& us, const SpectrumReference& ref) const {
  SpectrumMatch m;
  int first = -1;
  bool consistent = true;
  for (int p = 0; p < 3; ++p) {
    const Complex L = sys_.spectral().Lambda(ref.probes()[p], us);
    int best = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < ref.size(); ++k) {
      const double d = std::abs(ref.levels()[k][p] - L);
      if (d < gap) {
        gap = d;
        best = k;
      }
    }
    if (p == 0) {
      first = best;
      const Complex lk = ref.levels()[best][0];
      for (int j = 0; j < ref.size(); ++j)
        if (j != best && std::abs(ref.levels()[j][0] - lk) < 1e-8 * (1.0 + std::abs(lk)))
          throw AmbiguousMatch("two eigenvalues of t(u0) lie within 1e-8 of the matched one");
    } else if (best != first) {
      consistent = false;
    }
    m.eigen_gap = std::max(m.eigen_gap, gap);
    m.relative_gap = std::max(m.relative_gap, gap / (1.0 + std::abs(L)));
  }
  if (consistent) m.index = first;

  const Vector psi = sys_.vector(us);
  const Vector v = ref.eigenvectors().col(first);
  const Vector residual = psi - v * v.dot(psi);
  const double pn = psi.norm();
  m.angle = pn > 0 ? std::asin(std::min(1.0, residual.norm() / pn)) : std::numeric_limits<double>::quiet_NaN();
  return m;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Attempt {
  std::optional<SolveReport> report;
};

}  // namespace

MultiStartResult multi_start(const BetheSolver& solver, const MultiStartOptions& opts) {
  const int n = solver.N();
  MultiStartResult res;
  res.starts = opts.starts;
  res.dimension = 1 << n;

  const std::vector<Attempt> attempts = parallel_map<Attempt>(
      static_cast<size_t>(opts.starts),
      [&](size_t i) {
        const std::uint64_t seed = splitmix(opts.seed + i);
        Sampler sampler(seed);
        std::vector<Complex> start(n);
        for (auto& u : start) u = sampler.generic(opts.lo, opts.hi);
        Attempt a;
        try {
          SolveReport r = solver.newton(start);
          r.seed = seed;
          a.report = std::move(r);
        } catch (const SolverError&) {
        } catch (const SingularPoint&) {
        }
        return a;
      },
      opts.threads);

  for (const Attempt& a : attempts) {
    if (!a.report || !a.report->converged) {
      ++res.failures;
      continue;
    }
    ++res.converged;
    bool dup = false;
    for (const SolveReport& d : res.distinct) dup = dup || same_root_set(d.roots, a.report->roots, opts.dedup_tol);
    if (!dup) res.distinct.push_back(*a.report);
  }

  const SpectrumReference ref(solver.chain(), probe_points(solver.chain().model(), opts.seed));
  std::vector<int> hit(ref.size(), 0);
  for (SolveReport& r : res.distinct) {
    try {
      const SpectrumMatch m = solver.spectrum_match(r.roots, ref);
      r.eigen_gap = m.eigen_gap;
      r.relative_gap = m.relative_gap;
      r.eigvec_angle = m.angle;
      if (m.index && m.relative_gap <= opts.gap_tol) {
        r.matched_eigenvalue_index = m.index;
        ++res.matched;
        hit[*m.index] = 1;
      }
    } catch (const AmbiguousMatch&) {
    } catch (const SingularPoint&) {
    }
  }
  for (int h : hit) res.levels += h;
  const Complex q = solver.chain().model().q;
  for (size_t i = 0; i < res.distinct.size(); ++i)
    for (size_t j = i + 1; j < res.distinct.size(); ++j)
      if (related_by_crossing(res.distinct[i].roots, res.distinct[j].roots, q, opts.dedup_tol)) ++res.crossing_pairs;
  std::vector<size_t> reps;
  for (size_t i = 0; i < res.distinct.size(); ++i) {
    bool seen = false;
    for (size_t r : reps) seen = seen || related_by_crossing(res.distinct[r].roots, res.distinct[i].roots, q, opts.dedup_tol);
    if (!seen) reps.push_back(i);
  }
  res.orbits = static_cast<int>(reps.size());
  return res;
}

BoundaryParams interpolate_boundary(const BoundaryParams& start, const BoundaryParams& target, double s) {
  const FactorizedBoundary a = start.factors(), b = target.factors();
  auto geo = [s](Complex x, Complex y) {
    if (x == y) return x;
    return x * std::exp(s * std::log(y / x));
  };
  FactorizedBoundary f;
  f.xi = geo(a.xi, b.xi);
  f.xi_tilde = geo(a.xi_tilde, b.xi_tilde);
  f.kappa = geo(a.kappa, b.kappa);
  f.kappa_tilde = geo(a.kappa_tilde, b.kappa_tilde);
  f.mu = geo(a.mu, b.mu);
  f.mu_tilde = geo(a.mu_tilde, b.mu_tilde);
  f.tau = geo(a.tau, b.tau);
  f.tau_tilde = geo(a.tau_tilde, b.tau_tilde);
  return BoundaryParams::from_factorized(f);
}

bool on_constrained_locus(const BoundaryParams& bp, Complex q, int N, double tol) {
  for (int M = 0; M <= N; ++M)
    if (constraint_B_residual(bp, q, N, M) <= tol || constraint_C_residual(bp, q, N, M) <= tol) return true;
  return false;
}

std::vector<SolveReport> homotopy_solve(const ModelParams& model, const BoundaryParams& start,
                                        const BoundaryParams& target,
                                        const std::vector<std::vector<Complex>>& start_roots, int m0,
                                        const HomotopyOptions& opts) {
  if (opts.require_constrained_start && !on_constrained_locus(start, model.q, model.N()))
    throw InvalidParams("homotopy start is not on a constrained locus");

  NewtonOptions corrector;
  corrector.max_iter = opts.corrector_iter;

  std::vector<std::vector<Complex>> cur;
  {
    const BetheSolver solver(OpenChain(model, start), m0);
    for (const auto& r : start_roots) {
      const SolveReport rep = solver.newton(r);
      if (!rep.converged) throw Diverged("a start root set does not solve the start equations");
      cur.push_back(rep.roots);
    }
  }
  std::vector<std::vector<Complex>> prev = cur;
  std::vector<double> path{0.0};
  std::vector<int> iterations(cur.size(), 0);
  double s = 0.0, ds = opts.initial_step, last_ds = 0.0;

  while (s < 1.0) {
    ds = std::min(ds, 1.0 - s);
    const double s_new = std::min(1.0, s + ds);
    const BetheSolver solver(OpenChain(model, interpolate_boundary(start, target, s_new)), m0, corrector);
    std::vector<std::vector<Complex>> next(cur.size());
    std::vector<int> its(cur.size(), 0);
    bool ok = true;
    for (size_t k = 0; k < cur.size() && ok; ++k) {
      std::vector<Complex> pred = cur[k];
      if (last_ds > 0.0)
        for (size_t i = 0; i < pred.size(); ++i) pred[i] += (cur[k][i] - prev[k][i]) * (ds / last_ds);
      try {
        const SolveReport rep = solver.newton(pred);
        ok = rep.converged;
        double move = 0.0;
        if (ok) {
          std::vector<Complex> aligned = rep.roots;
          // match each root to its predecessor so that the secant predictor stays meaningful
          std::vector<Complex> ordered(cur[k].size());
          std::vector<bool> used(aligned.size(), false);
          for (size_t i = 0; i < cur[k].size(); ++i) {
            size_t best = 0;
            double d = std::numeric_limits<double>::infinity();
            for (size_t j = 0; j < aligned.size(); ++j)
              if (!used[j] && std::abs(aligned[j] - pred[i]) < d) {
                d = std::abs(aligned[j] - pred[i]);
                best = j;
              }
            used[best] = true;
            ordered[i] = aligned[best];
            move = std::max(move, std::abs(ordered[i] - cur[k][i]) / std::abs(cur[k][i]));
          }
          next[k] = ordered;
          its[k] = rep.iterations;
          ok = move < 0.25;
        }
      } catch (const SolverError&) {
        ok = false;
      } catch (const SingularPoint&) {
        ok = false;
      }
    }
    if (!ok) {
      ds *= 0.5;
      if (ds < opts.min_step) throw StepUnderflow("homotopy step fell below the minimum");
      continue;
    }
    for (size_t a = 0; a < next.size(); ++a)
      for (size_t b = a + 1; b < next.size(); ++b)
        if (same_root_set(next[a], next[b], opts.collision_tol))
          throw PathCollision("two tracked root sets merged at s = " + std::to_string(s_new));
    prev = cur;
    cur = next;
    for (size_t k = 0; k < cur.size(); ++k) iterations[k] += its[k];
    last_ds = ds;
    s = s_new;
    path.push_back(s);
    ds = std::min(ds * 1.5, opts.max_step);
  }

  const BetheSolver final_solver(OpenChain(model, target), m0);
  std::vector<SolveReport> out;
  for (size_t k = 0; k < cur.size(); ++k) {
    SolveReport rep = final_solver.newton(cur[k]);
    rep.iterations += iterations[k];
    rep.homotopy_path = path;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace xxz

#include "cli/suites.hpp"

#include <cmath>
#include <functional>

#include "xxz/limits.hpp"
#include "xxz/sampling.hpp"
#include "xxz/solver.hpp"

namespace xxz::cli {

namespace {

std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return seed ^ h;
}

class SuiteRun {
 public:
  SuiteRun(std::string name, const RunConfig& c)
      : name_(std::move(name)), c_(c), sampler_(suite_seed(c.seed, name_)), s_(c.model.q) {}

  Sampler& sampler() { return sampler_; }
  const Scalars& scalars() const { return s_; }
  const RunConfig& config() const { return c_; }

  Complex point(const std::vector<Complex>& extra = {}) {
    std::vector<Complex> others = c_.model.v;
    others.insert(others.end(), extra.begin(), extra.end());
    return sampler_.spectral_point(s_, others);
  }
  std::vector<Complex> roots(int M) { return sampler_.roots(M, s_, c_.model.v); }

  // residual must stay at or below the tolerance
  void check(const std::string& id, const std::string& eq, const std::string& tol_key,
             const std::function<double()>& fn) {
    record(id, eq, c_.tolerance(tol_key), fn, false);
  }
  // residual must exceed the tolerance
  void check_above(const std::string& id, const std::string& eq, const std::string& tol_key,
                   const std::function<double()>& fn) {
    record(id, eq, c_.tolerance(tol_key), fn, true);
  }
  void check_with(const std::string& id, const std::string& eq, double tol, const std::function<double()>& fn) {
    record(id, eq, tol, fn, false);
  }

  std::vector<Record> take() { return std::move(records_); }

 private:
  void record(const std::string& id, const std::string& eq, double tol, const std::function<double()>& fn, bool above) {
    Record r{name_, id, eq, std::nullopt, tol, false, {}};
    try {
      const double v = fn();
      r.residual = v;
      r.pass = std::isfinite(v) && (above ? v > tol : v <= tol);
    } catch (const std::exception& e) {
      r.note = e.what();
    }
    records_.push_back(std::move(r));
  }

  std::string name_;
  const RunConfig& c_;
  Sampler sampler_;
  Scalars s_;
  std::vector<Record> records_;
};

std::string idx(const std::string& base, int k) { return base + "#" + std::to_string(k); }

void suite_ybe(SuiteRun& run) {
  for (int k = 0; k < 5; ++k) {
    const Complex a = run.sampler().generic(), b = run.sampler().generic(), c = run.sampler().generic();
    run.check(idx("ybe", k), "yang-baxter", "ybe", [&] { return ybe_residual(run.scalars(), a, b, c); });
  }
}

void suite_reflection(SuiteRun& run) {
  const KMatrixPair km(run.config().model.q, run.config().bp);
  for (int k = 0; k < 5; ++k) {
    const Complex u = run.sampler().generic(), v = run.sampler().generic();
    run.check(idx("reflection", k), "reflection", "reflection", [&] { return km.check_reflection(u, v); });
    run.check(idx("dual-reflection", k), "dual-reflection", "reflection",
              [&] { return km.check_dual_reflection(u, v); });
    const KIdentityResiduals ids = k_identities(km.functions(), u, v);
    static const char* names[4] = {"k-identity-1-plus", "k-identity-1-minus", "k-identity-2-plus",
                                   "k-identity-2-minus"};
    for (int i = 0; i < 4; ++i)
      run.check(idx(names[i], k), names[i], "reflection", [&] { return ids.values[i]; });
  }
}

void suite_qdet(SuiteRun& run) {
  const KMatrixPair km(run.config().model.q, run.config().bp);
  for (int k = 0; k < 5; ++k) {
    const Complex u = run.sampler().generic();
    run.check(idx("qdet-minus", k), "quantum-determinant-minus", "qdet",
              [&] { return km.q_det_minus(u).residual; });
    run.check(idx("qdet-plus", k), "quantum-determinant-plus", "qdet", [&] { return km.q_det_plus(u).residual; });
  }
}

void suite_commutation(SuiteRun& run) {
  const OpenChain chain(run.config().model, run.config().bp);
  for (int k = 0; k < 2; ++k) {
    const Complex u = run.point();
    const Complex v = run.point({u});
    for (Relation r : kAllRelations) {
      const std::string name(to_string(r));
      run.check(idx("exchange-" + name, k), "exchange-" + name, "commutation",
                [&] { return chain.check_commutation(r, u, v); });
    }
    run.check(idx("transfer-trace-form", k), "transfer-expanded", "commutation", [&] {
      const Matrix a = chain.transfer_matrix(u), b = chain.transfer_expanded(u);
      return (a - b).norm() / (1.0 + std::max(a.norm(), b.norm()));
    });
    run.check(idx("transfer-hatted-form", k), "transfer-hatted", "commutation", [&] {
      const Matrix a = chain.transfer_matrix(u), b = chain.transfer_hatted(u);
      return (a - b).norm() / (1.0 + std::max(a.norm(), b.norm()));
    });
  }
}

void suite_dynamical(SuiteRun& run) {
  const RunConfig& c = run.config();
  const OpenChain chain(c.model, c.bp);
  const int N = chain.N();
  for (int k = 0; k < 2; ++k) {
    const int m = c.m0 + k;
    const DynamicalChain dc(chain, run.sampler().frame(m));
    const Complex u = run.point();
    const Complex v = run.point({u});
    const GaugeVectorResiduals gv = check_gauge_vectors(dc.vectors(), u, v, m);
    for (int i = 0; i < 4; ++i)
      run.check(idx("scalar-product-" + std::to_string(i), k), "gauge-scalar-product", "gauge",
                [&] { return gv.scalar_products[i]; });
    run.check(idx("closure", k), "gauge-closure", "gauge", [&] { return gv.closure; });
    for (int i = 0; i < 8; ++i)
      run.check(idx("intertwining-" + std::to_string(i), k), "gauge-intertwining", "gauge",
                [&] { return gv.intertwining[i]; });
    run.check(idx("sandwich-vs-expansion", k), "dynamical-expansion", "gauge",
              [&] { return dc.expansion_residual(u, m); });
    run.check(idx("decomposition", k), "transfer-decomposition", "gauge", [&] { return dc.decompose(u, m).residual; });
    run.check(idx("decomposition-hat", k), "transfer-decomposition-hat", "gauge",
              [&] { return dc.decompose_hat(u, m).residual; });
    for (DynRelation r : kAllDynRelations) {
      const std::string name(to_string(r));
      run.check(idx(name, k), name, "dynamical", [&] { return dc.check_dynamical(r, u, v, m); });
    }
    const FunctionalRelationResiduals fr = functional_relations(chain.functions(), dc.coefficients(), u, v, m);
    for (int i = 0; i < 4; ++i) {
      run.check(idx("functional-" + std::to_string(i), k), "functional-relation", "dynamical",
                [&] { return fr.plain[i]; });
      run.check(idx("functional-hat-" + std::to_string(i), k), "functional-relation-hat", "dynamical",
                [&] { return fr.hatted[i]; });
    }
    for (int M = 1; M <= N; ++M) {
      const std::vector<Complex> us = run.roots(M);
      const Complex w = run.point(us);
      const std::string tag = "M" + std::to_string(M);
      const SummationResiduals sr = summation_identities(dc.coefficients(), w, us, m);
      run.check(idx("summation-1-" + tag, k), "summation-identity-1", "dynamical", [&] { return sr.first; });
      run.check(idx("summation-2-" + tag, k), "summation-identity-2", "dynamical", [&] { return sr.second; });
      const BStringActions ba = dc.act_on_B_string(w, us, m);
      run.check(idx("A-on-B-string-" + tag, k), "A-on-B-string", "dynamical", [&] { return ba.A; });
      run.check(idx("D-on-B-string-" + tag, k), "D-on-B-string", "dynamical", [&] { return ba.D; });
      run.check(idx("td-on-B-string-" + tag, k), "td-on-B-string", "dynamical", [&] { return ba.td; });
      run.check(idx("tps-on-B-string-" + tag, k), "tps-on-B-string", "dynamical", [&] { return ba.tps; });
      const CStringActions ca = dc.act_on_C_string(w, us, m);
      run.check(idx("td-hat-on-C-string-" + tag, k), "td-hat-on-C-string", "dynamical", [&] { return ca.td_hat; });
      run.check(idx("tps-hat-on-C-string-" + tag, k), "tps-hat-on-C-string", "dynamical",
                [&] { return ca.tps_hat; });
    }
  }
}

void suite_weights(SuiteRun& run) {
  const RunConfig& c = run.config();
  const OpenChain chain(c.model, c.bp);
  const Complex q = c.model.q;
  const int N = chain.N();
  const DynamicalChain hw(chain, {alpha_hw(c.bp, q, N, c.m0), run.sampler().generic(), c.m0});
  const DynamicalChain lw(chain, {run.sampler().generic(), beta_lw(c.bp, q, N, c.m0), c.m0});
  const DynamicalChain both(chain, {alpha_hw(c.bp, q, N, c.m0), beta_lw(c.bp, q, N, c.m0), c.m0});
  const Vector omega = highest_weight_state(hw.vectors(), c.model.v, c.m0);
  const Vector omega_hat = lowest_weight_state(lw.vectors(), c.model.v, c.m0);
  for (int k = 0; k < 3; ++k) {
    const Complex u = run.point();
    const WeightActions h = highest_weight_actions(hw, omega, c.m0, u);
    const WeightActions l = lowest_weight_actions(lw, omega_hat, c.m0, u);
    run.check(idx("highest-A", k), "highest-weight-A", "weights", [&] { return h.diag_first; });
    run.check(idx("highest-D", k), "highest-weight-D", "weights", [&] { return h.diag_second; });
    run.check(idx("highest-C", k), "highest-weight-C-annihilates", "weights", [&] { return h.annihilated; });
    run.check(idx("lowest-A-hat", k), "lowest-weight-A-hat", "weights", [&] { return l.diag_first; });
    run.check(idx("lowest-D-hat", k), "lowest-weight-D-hat", "weights", [&] { return l.diag_second; });
    run.check(idx("lowest-B", k), "lowest-weight-B-annihilates", "weights", [&] { return l.annihilated; });
  }
  const std::vector<Complex> us = run.roots(N + 1);
  run.check("nilpotent-B", "B-string-nilpotent", "weights", [&] { return nilpotency_B(both, us, c.m0); });
  run.check("nilpotent-C", "C-string-nilpotent", "weights", [&] { return nilpotency_C(both, us, c.m0); });
}

void suite_offshell(SuiteRun& run) {
  const RunConfig& c = run.config();
  const OpenChain chain(c.model, c.bp);
  const int N = chain.N();
  for (int M = 0; M <= N; ++M) {
    const BetheSystem bs(chain, c.m0, M);
    const DualBetheSystem ds(chain, c.m0, M);
    const std::string tag = "M" + std::to_string(M);
    for (int k = 0; k < 2; ++k) {
      const std::vector<Complex> us = run.roots(M);
      const Complex u = run.point(us);
      run.check(idx("td-" + tag, k), "td-on-bethe-vector", "offshell", [&] { return bs.td_residual(u, us); });
      run.check(idx("tps-" + tag, k), "tps-on-bethe-vector", "offshell", [&] { return bs.tps_residual(u, us); });
      run.check(idx("transfer-" + tag, k), "transfer-on-bethe-vector", "offshell",
                [&] { return bs.tlow_residual(u, us); });
      run.check(idx("transfer-dual-" + tag, k), "transfer-on-dual-bethe-vector", "offshell",
                [&] { return ds.offshell_residual(u, us); });
      for (int i = 0; i < M; ++i)
        run.check(idx("pole-limit-" + tag + "-" + std::to_string(i), k), "eigenvalue-pole-limit", "pole-limit", [&] {
          const Complex e = bs.spectral().E(size_t(i), us);
          return std::abs(e - bs.spectral().E_limit(size_t(i), us)) / std::abs(e);
        });
    }
  }
}

void suite_conjecture(SuiteRun& run) {
  const RunConfig& c = run.config();
  const OpenChain chain(c.model, c.bp);
  const int N = chain.N();
  const BetheSystem bs(chain, c.m0, N);
  const DualBetheSystem ds(chain, c.m0, N);
  for (int k = 0; k < 2; ++k) {
    const std::vector<Complex> us = run.roots(N);
    const Complex u = run.point(us);
    run.check(idx("creation-B", k), "modified-creation-B", "conjecture", [&] { return bs.conjecture_residual(u, us); });
    run.check(idx("creation-C", k), "modified-creation-C", "conjecture", [&] { return ds.conjecture_residual(u, us); });
    run.check(idx("full-B", k), "full-offshell-action-B", "conjecture", [&] { return bs.full_residual(u, us); });
    run.check(idx("full-C", k), "full-offshell-action-C", "conjecture", [&] { return ds.full_residual(u, us); });
  }
}

void suite_triangular(SuiteRun& run) {
  const RunConfig& c = run.config();
  const int N = c.model.N();
  RawBoundary raw = c.bp.raw();
  raw.tau_tilde = 0.0;
  const TriangularChain tc(c.model, BoundaryParams::from_raw(raw), c.m0);
  for (int k = 0; k < 2; ++k) {
    const std::vector<Complex> us = run.roots(N);
    const Complex u = run.point(us);
    const Complex alpha = run.sampler().generic();
    run.check(idx("full-action", k), "triangular-full-action", "triangular",
              [&] { return tc.full_residual(u, us, alpha); });
    const TriangularChain::VacuumResiduals vac = tc.vacuum_residuals(u, alpha);
    run.check(idx("vacuum-A", k), "triangular-vacuum-A", "triangular", [&] { return vac.A; });
    run.check(idx("vacuum-D", k), "triangular-vacuum-D", "triangular", [&] { return vac.D; });
    for (int M = 0; M <= N; ++M) {
      const std::string tag = "M" + std::to_string(M);
      const std::vector<Complex> sub(us.begin(), us.begin() + M);
      run.check(idx("decomposition-" + tag, k), "triangular-decomposition", "triangular",
                [&] { return tc.decomposition_residual(u, M); });
      run.check(idx("modified-action-" + tag, k), "triangular-modified-action", "triangular",
                [&] { return tc.modified_action_residual(u, sub); });
    }
    run.check(idx("extra-term", k), "triangular-extra-term", "triangular",
              [&] { return tc.extra_term_residual(u, us); });
  }
  const std::vector<Complex> us = run.roots(N);
  const Complex u = run.point(us);
  const ConvergenceReport cr = triangular_convergence(c.model, c.bp.raw(), u, us);
  for (size_t i = 1; i < cr.points.size(); ++i) {
    const ConvergencePoint &a = cr.points[i - 1], &b = cr.points[i];
    run.check_with(idx("gap-coefficient", int(i)), "limit-gap-coefficient", a.coefficient_gap,
                   [&] { return b.coefficient_gap; });
    run.check_with(idx("gap-k-minus", int(i)), "limit-gap-k-minus", a.k_gap, [&] { return b.k_gap; });
    run.check_with(idx("gap-eigenvalue", int(i)), "limit-gap-eigenvalue", a.lambda_gap, [&] { return b.lambda_gap; });
  }
}

void suite_constrained(SuiteRun& run) {
  const RunConfig& c = run.config();
  const int N = c.model.N();
  const Complex q = c.model.q;
  for (int M = 0; M < N; ++M) {
    const int M_hat = N - 1 - M;
    const BoundaryParams e = impose_both_constraints(c.bp, q, N, M);
    const std::string tag = "M" + std::to_string(M);
    const ConstraintReport r = constraint_detector(c.model, e, M, M_hat, c.m0, run.sampler().engine()());
    run.check(idx("engineered-B", M), "constraint-B-unwanted-terms", "constrained",
              [&] { return r.holdsB ? r.extraB : INFINITY; });
    run.check(idx("engineered-C", M), "constraint-C-unwanted-terms", "constrained",
              [&] { return r.holdsC ? r.extraC : INFINITY; });
    const ConstraintReport g = constraint_detector(c.model, c.bp, M, M_hat, c.m0);
    run.check_above(idx("generic-off-locus-B", M), "constraint-B-violated", "locus", [&] { return g.residualB; });
    run.check_above(idx("generic-off-locus-C", M), "constraint-C-violated", "locus", [&] { return g.residualC; });
    const OpenChain chain(c.model, c.bp);
    const BetheSystem bs(chain, c.m0, M);
    const std::vector<Complex> us = run.roots(M);
    const Complex u = run.point(us);
    run.check_above(idx("generic-unwanted-B", M), "unwanted-terms-present", "constrained",
                    [&] { return bs.extra_terms_norm(u, us); });
  }
}

}  // namespace

std::vector<Record> run_suite(const std::string& suite, const RunConfig& c) {
  static const std::map<std::string, std::function<void(SuiteRun&)>> table = {
      {"ybe", suite_ybe},           {"reflection", suite_reflection}, {"qdet", suite_qdet},
      {"commutation", suite_commutation}, {"dynamical", suite_dynamical}, {"weights", suite_weights},
      {"offshell", suite_offshell}, {"conjecture", suite_conjecture}, {"triangular", suite_triangular},
      {"constrained", suite_constrained}};
  auto it = table.find(suite);
  if (it == table.end()) throw ConfigError("unknown suite " + suite);
  SuiteRun run(suite, c);
  try {
    it->second(run);
  } catch (const std::exception& e) {
    std::vector<Record> out = run.take();
    out.push_back({suite, "setup", "suite-setup", std::nullopt, 0.0, false, e.what()});
    return out;
  }
  return run.take();
}

std::vector<Record> run_suites(const RunConfig& c) {
  const std::vector<std::vector<Record>> parts = parallel_map<std::vector<Record>>(
      c.suites.size(), [&](size_t i) { return run_suite(c.suites[i], c); }, c.threads);
  std::vector<Record> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace xxz::cli

#include "cli/commands.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "xxz/limits.hpp"
#include "xxz/solver.hpp"

namespace xxz::cli {

CommandResult cmd_verify(const RunConfig& c) {
  CommandResult res;
  const std::string digest = params_digest(c);
  for (const Record& r : run_suites(c)) {
    res.rows.push_back(record_row(r, c.seed, digest));
    if (!r.pass) res.status = 1;
  }
  return res;
}

namespace {

std::vector<Complex> sorted_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

Row roots_json(const std::vector<Complex>& us) {
  Row a = Row::array();
  for (Complex u : us) a.push_back(Row::array({u.real(), u.imag()}));
  return a;
}

}  // namespace

CommandResult cmd_spectrum(const RunConfig& c) {
  CommandResult res;
  const OpenChain chain(c.model, c.bp);
  const Complex u0 = c.u0 ? *c.u0 : probe_points(c.model, c.seed)[0];
  const std::string digest = params_digest(c);
  auto emit = [&](const char* kind, const std::vector<Complex>& ev) {
    for (size_t i = 0; i < ev.size(); ++i) {
      Row r;
      r["kind"] = kind;
      r["index"] = i;
      r["re"] = ev[i].real();
      r["im"] = ev[i].imag();
      r["u0"] = Row::array({u0.real(), u0.imag()});
      r["seed"] = c.seed;
      r["params_digest"] = digest;
      res.rows.push_back(r);
    }
  };
  emit("transfer", sorted_eigenvalues(chain.transfer_matrix(u0)));
  const Matrix h = chain.hamiltonian_direct();
  emit("hamiltonian", sorted_eigenvalues(h));
  const bool homogeneous =
      std::all_of(c.model.v.begin(), c.model.v.end(), [](Complex v) { return std::abs(v - 1.0) == 0.0; });
  if (homogeneous) {
    Row r;
    r["kind"] = "hamiltonian_check";
    try {
      const TransferHamiltonian th = chain.hamiltonian_from_transfer();
      const double rel = (h - th.H).norm() / h.norm();
      r["residual"] = rel;
      r["tol"] = 1e-6;
      r["pass"] = rel <= 1e-6;
      if (rel > 1e-6) res.status = 1;
    } catch (const std::exception& e) {
      r["residual"] = nullptr;
      r["pass"] = false;
      r["note"] = e.what();
      res.status = 1;
    }
    r["seed"] = c.seed;
    r["params_digest"] = digest;
    res.rows.push_back(r);
  }
  return res;
}

CommandResult cmd_solve(const RunConfig& c) {
  CommandResult res;
  const std::string digest = params_digest(c);
  const OpenChain chain(c.model, c.bp);
  const BetheSolver solver(chain, c.m0);
  MultiStartOptions opts;
  opts.starts = c.starts;
  opts.seed = c.seed;
  opts.threads = c.threads;
  const MultiStartResult ms = multi_start(solver, opts);

  auto report_row = [&](const char* kind, const SolveReport& r) {
    Row row;
    row["kind"] = kind;
    row["roots"] = roots_json(r.roots);
    row["residual_max"] = r.residual_max;
    row["converged"] = r.converged;
    row["matched_index"] = r.matched_eigenvalue_index ? Row(*r.matched_eigenvalue_index) : Row(nullptr);
    row["eigen_gap"] = r.eigen_gap;
    row["eigvec_angle"] = r.eigvec_angle;
    row["iterations"] = r.iterations;
    row["seed"] = r.seed;
    row["params_digest"] = digest;
    return row;
  };
  for (const SolveReport& r : ms.distinct) res.rows.push_back(report_row("root_set", r));

  Row summary;
  summary["kind"] = "completeness";
  summary["levels"] = ms.levels;
  summary["dimension"] = ms.dimension;
  summary["distinct_root_sets"] = ms.distinct.size();
  summary["orbits"] = ms.orbits;
  summary["crossing_pairs"] = ms.crossing_pairs;
  summary["matched"] = ms.matched;
  summary["converged"] = ms.converged;
  summary["starts"] = ms.starts;
  summary["seed"] = c.seed;
  summary["params_digest"] = digest;
  res.rows.push_back(summary);

  if (c.homotopy) {
    // Track one root set per level from a point on the constrained locus.
    const int N = c.model.N();
    const BoundaryParams start = impose_constraint_C(c.bp, c.model.q, N, N);
    const BetheSolver start_solver(OpenChain(c.model, start), c.m0);
    const MultiStartResult sm = multi_start(start_solver, opts);
    std::vector<std::vector<Complex>> roots;
    std::vector<int> seen;
    for (const SolveReport& r : sm.distinct) {
      if (!r.matched_eigenvalue_index) continue;
      if (std::find(seen.begin(), seen.end(), *r.matched_eigenvalue_index) != seen.end()) continue;
      seen.push_back(*r.matched_eigenvalue_index);
      roots.push_back(r.roots);
    }
    try {
      const std::vector<SolveReport> tracked = homotopy_solve(c.model, start, c.bp, roots, c.m0);
      const SpectrumReference ref(chain, probe_points(c.model, c.seed));
      for (SolveReport r : tracked) {
        try {
          const SpectrumMatch m = solver.spectrum_match(r.roots, ref);
          if (m.index && m.relative_gap <= 1e-8) r.matched_eigenvalue_index = m.index;
          r.eigen_gap = m.eigen_gap;
          r.eigvec_angle = m.angle;
        } catch (const std::exception&) {
        }
        Row row = report_row("homotopy", r);
        row["path_steps"] = r.homotopy_path.size();
        res.rows.push_back(row);
      }
    } catch (const std::exception& e) {
      Row row;
      row["kind"] = "homotopy_error";
      row["note"] = e.what();
      res.rows.push_back(row);
      res.status = 1;
    }
  }
  return res;
}

}  // namespace xxz::cli

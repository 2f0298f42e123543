// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cli/commands.hpp"
#include "xxz/limits.hpp"
#include "xxz/sampling.hpp"
#include "xxz/solver.hpp"

using namespace xxz;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Largest residual seen; a SingularPoint draw is skipped and counted.
struct Worst {
  double value = 0.0;
  int checks = 0, skipped = 0;

  void add(double r) {
    value = std::max(value, std::isfinite(r) ? r : INFINITY);
    ++checks;
  }
  template <class Fn>
  void run(Fn fn) {
    try {
      fn();
    } catch (const SingularPoint&) {
      ++skipped;
    }
  }
  std::string str() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst %.2e over %d checks", value, checks);
    return skipped ? std::string(buf) + ", " + std::to_string(skipped) + " singular draws skipped" : buf;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Chain {
  ModelParams model;
  BoundaryParams bp;
};

Chain draw(Sampler& s, int N) { return {s.model(N), s.boundary()}; }

Complex point(Sampler& s, const Scalars& sc, std::vector<Complex> others, const std::vector<Complex>& more = {}) {
  others.insert(others.end(), more.begin(), more.end());
  return s.spectral_point(sc, others);
}

Outcome a1_structural() {
  const auto t0 = std::chrono::steady_clock::now();
  Sampler rng(101);
  Worst w;
  for (int i = 0; i < 50; ++i) {
    const Complex q = rng.generic();
    const Scalars s(q);
    w.add(ybe_residual(s, rng.generic(), rng.generic(), rng.generic()));
    const KMatrixPair k(q, rng.boundary());
    const Complex u1 = rng.generic(), u2 = rng.generic();
    w.run([&] {
      w.add(k.check_reflection(u1, u2));
      w.add(k.check_dual_reflection(u1, u2));
      w.add(k.q_det_minus(u1).residual);
      w.add(k.q_det_plus(u1).residual);
      for (double r : k_identities(k.functions(), u1, u2).values) w.add(r);
    });
  }
  const double dt = seconds_since(t0);
  return {w.value <= 1e-11 && dt < 30.0 && w.checks >= 450, w.str() + ", tol 1e-11, " + fmt("%.2fs", dt)};
}

Outcome a2_commutation() {
  const auto t0 = std::chrono::steady_clock::now();
  Sampler rng(202);
  Worst w;
  for (int N = 1; N <= 3; ++N)
    for (int k = 0; k < 3; ++k) {
      const Chain c = draw(rng, N);
      const OpenChain chain(c.model, c.bp);
      const Complex u = point(rng, chain.scalars(), c.model.v);
      const Complex v = point(rng, chain.scalars(), c.model.v, {u});
      w.run([&] {
        for (Relation r : kAllRelations) w.add(chain.check_commutation(r, u, v));
      });
      const DynamicalChain dyn(chain, rng.frame());
      const int m = static_cast<int>(rng.uniform(-3, 3));
      w.run([&] {
        for (DynRelation r : kAllDynRelations) w.add(dyn.check_dynamical(r, u, v, m));
      });
    }
  const double dt = seconds_since(t0);
  return {w.value <= 1e-10 && dt < 120.0 && w.checks == 3 * 3 * 18,
          "12 relations + 6 dynamical, N=1..3, " + w.str() + ", tol 1e-10, " + fmt("%.2fs", dt)};
}

Outcome a3_gauge() {
  Sampler rng(303);
  Worst w;
  for (int N = 1; N <= 3; ++N)
    for (int k = 0; k < 4; ++k) {
      const Chain c = draw(rng, N);
      const OpenChain chain(c.model, c.bp);
      const DynamicalChain dyn(chain, rng.frame());
      const int m = static_cast<int>(rng.uniform(-4, 4));
      const Complex u = point(rng, chain.scalars(), c.model.v);
      const Complex v = point(rng, chain.scalars(), c.model.v, {u});
      w.run([&] {
        const GaugeVectorResiduals g = check_gauge_vectors(dyn.vectors(), u, v, m);
        for (double r : g.scalar_products) w.add(r);
        for (double r : g.intertwining) w.add(r);
        w.add(g.closure);
        w.add(dyn.expansion_residual(u, m));
        w.add(dyn.decompose(u, m).residual);
        w.add(dyn.decompose_hat(u, m).residual);
      });
    }
  return {w.value <= 1e-11 && w.checks == 12 * 16, "random frames, N=1..3, " + w.str() + ", tol 1e-11"};
}

Outcome a4_hamiltonian() {
  Sampler rng(404);
  double worst = 0.0, t5 = 0.0;
  int checks = 0;
  for (int N = 2; N <= 5; ++N) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < 5; ++k) {
      const OpenChain chain(rng.homogeneous(N), rng.boundary());
      const Matrix h = chain.hamiltonian_direct();
      worst = std::max(worst, (h - chain.hamiltonian_from_transfer().H).norm() / h.norm());
      ++checks;
    }
    if (N == 5) t5 = seconds_since(t0);
  }
  return {worst <= 1e-6 && t5 < 60.0 && checks == 20,
          fmt("N=2..5 x 5 draws, worst relative gap %.2e, tol 1e-6, ", worst) + fmt("N=5 %.2fs", t5)};
}

Outcome a5_offshell() {
  Sampler rng(505);
  Worst w;
  for (int k = 0; k < 10; ++k)
    for (int N = 1; N <= 3; ++N) {
      const Chain c = draw(rng, N);
      const OpenChain chain(c.model, c.bp);
      for (int M = 0; M <= N; ++M) {
        const auto us = rng.roots(M, chain.scalars(), c.model.v);
        const Complex u = point(rng, chain.scalars(), c.model.v, us);
        w.run([&] {
          const BetheSystem sys(chain, 0, M);
          w.add(sys.td_residual(u, us));
          w.add(sys.tps_residual(u, us));
          w.add(sys.tlow_residual(u, us));
        });
      }
    }
  return {w.value <= 1e-9 && w.checks == 10 * 9 * 3, "M <= N <= 3, 10 draws, " + w.str() + ", tol 1e-9"};
}

Outcome a6_conjecture() {
  const auto t0 = std::chrono::steady_clock::now();
  Sampler rng(606);
  const int draws[] = {5, 5, 3};
  const double tols[] = {1e-11, 1e-10, 1e-8};
  bool ok = true;
  std::string detail;
  for (int N = 1; N <= 3; ++N) {
    Worst w;
    for (int k = 0; k < draws[N - 1]; ++k) {
      const Chain c = draw(rng, N);
      const OpenChain chain(c.model, c.bp);
      const auto us = rng.roots(N, chain.scalars(), c.model.v);
      const Complex u = point(rng, chain.scalars(), c.model.v, us);
      w.run([&] {
        w.add(BetheSystem(chain, 0, N).conjecture_residual(u, us));
        w.add(DualBetheSystem(chain, 0, N).conjecture_residual(u, us));
      });
    }
    ok = ok && w.value <= tols[N - 1] && w.checks == 2 * draws[N - 1];
    detail += "N=" + std::to_string(N) + " " + fmt("%.2e", w.value) + fmt(" (tol %.0e); ", tols[N - 1]);
  }
  const double dt = seconds_since(t0);
  return {ok && dt < 300.0, detail + fmt("%.2fs", dt)};
}

Outcome a7_spectra() {
  Sampler rng(707);
  bool ok = true;
  std::string detail;
  for (int N = 1; N <= 2; ++N) {
    const Chain c = draw(rng, N);
    const BetheSolver solver(OpenChain(c.model, c.bp));
    MultiStartOptions o;
    o.seed = 700 + N;
    const MultiStartResult ms = multi_start(solver, o);
    double gap = 0.0, angle = 0.0;
    for (const SolveReport& r : ms.distinct) {
      if (!r.matched_eigenvalue_index) continue;
      gap = std::max(gap, r.relative_gap);
      angle = std::max(angle, r.eigvec_angle);
    }
    ok = ok && ms.levels > 0 && gap <= 1e-8 && angle <= 1e-6;
    detail += "N=" + std::to_string(N) + " levels " + std::to_string(ms.levels) + "/" + std::to_string(ms.dimension) +
              fmt(" gap %.1e", gap) + fmt(" angle %.1e; ", angle);
  }
  return {ok, detail + "tol gap 1e-8 (relative), angle 1e-6"};
}

Outcome a8_limits() {
  Sampler rng(808);
  Worst tri;
  bool monotone = true;
  for (int N = 1; N <= 2; ++N)
    for (int k = 0; k < 3; ++k) {
      const Chain c = draw(rng, N);
      RawBoundary raw = c.bp.raw();
      const auto us = rng.roots(N, Scalars(c.model.q), c.model.v);
      const Complex u = point(rng, Scalars(c.model.q), c.model.v, us);
      const ConvergenceReport cr = triangular_convergence(c.model, raw, u, us);
      monotone = monotone && cr.monotone;
      raw.tau_tilde = 0.0;
      tri.run([&] {
        const TriangularChain t(c.model, BoundaryParams::from_raw(raw));
        const Complex alpha = rng.generic();
        tri.add(t.full_residual(u, us, alpha));
        const auto vac = t.vacuum_residuals(u, alpha);
        tri.add(vac.A);
        tri.add(vac.D);
        for (int M = 1; M <= N; ++M) {
          const std::vector<Complex> sub(us.begin(), us.begin() + M);
          const DynamicalCoefficients dc(c.model.q, c.bp, rng.frame());
          const SummationResiduals s = summation_identities(dc, u, sub, 2 * M);
          tri.add(s.first);
          tri.add(s.second);
        }
      });
    }

  // unwanted terms vanish on the loci and only there
  double on = 0.0, off = INFINITY;
  bool detected = true;
  for (int N = 1; N <= 3; ++N) {
    const Chain c = draw(rng, N);
    for (int M = 0; M < N; ++M) {
      const ConstraintReport b = constraint_detector(c.model, impose_constraint_B(c.bp, c.model.q, N, M), M, M, 0);
      const ConstraintReport cc = constraint_detector(c.model, impose_constraint_C(c.bp, c.model.q, N, M), M, M, 0);
      const ConstraintReport g = constraint_detector(c.model, c.bp, M, M, 0);
      detected = detected && b.holdsB && cc.holdsC && !g.holdsB && !g.holdsC;
      on = std::max({on, b.extraB, cc.extraC});
      const BetheSystem sys(OpenChain(c.model, c.bp), 0, M);
      const auto us = rng.roots(M, sys.spectral().scalars(), c.model.v);
      off = std::min(off, sys.extra_terms_norm(point(rng, sys.spectral().scalars(), c.model.v, us), us));
      const DualBetheSystem dual(OpenChain(c.model, c.bp), 0, M);
      off = std::min(off, dual.extra_terms_norm(point(rng, sys.spectral().scalars(), c.model.v, us), us));
    }
  }
  const bool ok = tri.value <= 1e-10 && monotone && detected && on <= 1e-12 && off > 1e-12;
  return {ok, "triangular " + tri.str() + " (tol 1e-10); convergence " + (monotone ? "monotone" : "NOT monotone") +
                  fmt("; unwanted terms on locus %.1e", on) + fmt(", off locus >= %.1e", off)};
}

Outcome a9_determinism(const char* exe) {
  nlohmann::json doc = xxz::cli::default_document();
  const xxz::cli::RunConfig c = xxz::cli::materialize(doc, {});
  auto render = [&] {
    std::ostringstream os;
    xxz::cli::write_jsonl(os, xxz::cli::cmd_verify(c).rows);
    return os.str();
  };
  const std::string a = render(), b = render();
  bool ok = !a.empty() && a == b;
  std::string detail = "in-process " + std::to_string(a.size()) + " bytes " + (a == b ? "identical" : "DIFFER");
  if (exe) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "xxz_acceptance";
    fs::create_directories(dir);
    auto run = [&](const fs::path& out) {
      const std::string cmd = std::string(exe) + " verify --seed 42 --out " + out.string();
      if (std::system(cmd.c_str()) != 0) return std::string();
      std::ifstream f(out, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(f), {});
    };
    const std::string x = run(dir / "a.jsonl"), y = run(dir / "b.jsonl");
    ok = ok && !x.empty() && x == y;
    detail += "; binary " + std::to_string(x.size()) + " bytes " + (x == y ? "identical" : "DIFFER");
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const char* exe = argc > 1 ? argv[1] : nullptr;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"A1 structural identities", a1_structural},
      {"A2 commutation algebra", a2_commutation},
      {"A3 gauge layer", a3_gauge},
      {"A4 hamiltonian", a4_hamiltonian},
      {"A5 off-shell actions", a5_offshell},
      {"A6 conjectured actions", a6_conjecture},
      {"A7 on-shell spectra", a7_spectra},
      {"A8 limits", a8_limits},
      {"A9 determinism", [exe] { return a9_determinism(exe); }},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}

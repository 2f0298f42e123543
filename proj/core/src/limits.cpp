#include "xxz/limits.hpp"

#include <cmath>

#include "xxz/sampling.hpp"

namespace xxz {

TriangularChain::TriangularChain(const ModelParams& model, const BoundaryParams& bp, int m0)
    : chain_(model, bp), spec_(model, bp), m0_(m0), omega_(diagonal_state(model.N())) {
  if (bp.tau_tilde != 0.0) throw InvalidParams("triangular chain needs tau~ = 0");
}

Vector TriangularChain::vector(const GaugeFrame& frame, const std::vector<Complex>& us, int m) const {
  const DynamicalChain dc(chain_, frame);
  Vector x = omega_;
  for (int j = static_cast<int>(us.size()); j >= 1; --j) x = dc.family(us[j - 1], m - 2 * j).B * x;
  return x;
}

double TriangularChain::full_residual(Complex u, const std::vector<Complex>& us, Complex alpha) const {
  const int N = chain_.N();
  if (static_cast<int>(us.size()) != N) throw InvalidParams("the triangular action needs N roots");
  const Scalars& s = chain_.scalars();
  const GaugeFrame frame{alpha, beta_tl(chain_.boundary(), s.q(), m0_, N), m0_};
  const int m = m0_ + 2 * N;
  const Vector phi = vector(frame, us, m);
  Vector rhs = spec_.Lambda_up(u, us) * phi;
  for (size_t i = 0; i < us.size(); ++i)
    rhs += s.F_tilde(u, us[i]) * spec_.E_up(i, us) * vector(frame, replace_at(us, i, u), m);
  return vector_residual(chain_.transfer_matrix(u) * phi, rhs);
}

TriangularChain::VacuumResiduals TriangularChain::vacuum_residuals(Complex u, Complex alpha) const {
  const Scalars& s = chain_.scalars();
  const BoundaryFunctions& bf = chain_.functions();
  const Complex q = s.q();
  const Complex ui = 1.0 / (q * u);
  const std::vector<Complex>& v = chain_.model().v;
  const DynamicalChain dc(chain_, {alpha, beta_tl(chain_.boundary(), q, m0_, chain_.N()), m0_});
  const DynamicalFamily f = dc.family(u, m0_);
  const Vector b = dc.family(u, m0_ - 2).B * omega_;
  const Vector a_rhs = u * u * bf.k_minus(u) * lambda_product(s, v, u) * omega_ + b;
  const Vector d_rhs = s.phi(ui) * bf.k_minus(ui) * lambda_product(s, v, ui) / q * omega_ - s.phi(u) * b;
  return {vector_residual(f.A * omega_, a_rhs), vector_residual(f.D * omega_, d_rhs)};
}

GaugeFrame TriangularChain::frame_d(int M) const {
  const Complex q = chain_.scalars().q();
  return {alpha_d(chain_.boundary(), q, m0_, M), beta_d(chain_.boundary(), q, m0_, M), m0_};
}

double TriangularChain::decomposition_residual(Complex u, int M) const {
  const DynamicalChain dc(chain_, frame_d(M));
  const BoundaryFunctions& bf = chain_.functions();
  const DynamicalFamily f = dc.family(u, m0_ + 2 * M);
  const Matrix t = chain_.transfer_matrix(u);
  const Matrix rhs = bf.a_tilde(u) * f.A + bf.d_tilde(u) * f.D;
  return (t - rhs).norm() / (1.0 + std::max(t.norm(), rhs.norm()));
}

Vector TriangularChain::extra_term(const DynamicalChain& dc, Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = chain_.scalars();
  const Complex q = s.q();
  const int M = static_cast<int>(us.size());
  const Complex kappa = chain_.boundary().kappa;
  const Vector shifted = vector(dc.frame(), us, m0_ - 2 + 2 * M);
  return kappa * kappa * dc.coefficients().gamma_m(m0_ - 1) / (q * u) * Scalars::c(q * u) *
         (dc.family(u, m0_ + 2 * M - 2).B * shifted);
}

double TriangularChain::modified_action_residual(Complex u, const std::vector<Complex>& us) const {
  const int M = static_cast<int>(us.size());
  if (M > chain_.N()) throw InvalidParams("more roots than sites");
  const Scalars& s = chain_.scalars();
  const DynamicalChain dc(chain_, frame_d(M));
  const int m = m0_ + 2 * M;
  const Vector phi = vector(dc.frame(), us, m);
  Vector rhs = spec_.Lambda_d(u, us) * phi + extra_term(dc, u, us);
  for (size_t i = 0; i < us.size(); ++i)
    rhs += s.F_tilde(u, us[i]) * spec_.E_d(i, us) * vector(dc.frame(), replace_at(us, i, u), m);
  return vector_residual(chain_.transfer_matrix(u) * phi, rhs);
}

double TriangularChain::extra_term_residual(Complex u, const std::vector<Complex>& us) const {
  const int N = chain_.N();
  if (static_cast<int>(us.size()) != N) throw InvalidParams("the extra-term expansion needs N roots");
  const Scalars& s = chain_.scalars();
  const DynamicalChain dc(chain_, frame_d(N));
  const int m = m0_ + 2 * N;
  Vector rhs = spec_.Lambda_gup(u, us) * vector(dc.frame(), us, m);
  for (size_t i = 0; i < us.size(); ++i)
    rhs += s.F_tilde(u, us[i]) * spec_.E_gup(i, us) * vector(dc.frame(), replace_at(us, i, u), m);
  return vector_residual(extra_term(dc, u, us), rhs);
}

namespace {

double rel_gap(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

ConvergenceReport triangular_convergence(const ModelParams& model, const RawBoundary& base, Complex u,
                                         const std::vector<Complex>& us, const std::vector<double>& tau_tildes) {
  RawBoundary limit_raw = base;
  limit_raw.tau_tilde = 0.0;
  const BoundaryParams limit_bp = BoundaryParams::from_raw(limit_raw);
  const TriangularSpectralFunctions tri(model, limit_bp);
  const BoundaryFunctions tri_bf(model.q, limit_bp);
  const Complex k_target = u * tri_bf.k_minus(u);
  const Complex coef_target = tri.coefficient();
  const Complex lambda_target = tri.Lambda_up(u, us);

  ConvergenceReport report{};
  std::vector<double> x, gc, gk, gl;
  for (double t : tau_tildes) {
    RawBoundary r = base;
    r.tau_tilde = t;
    const SpectralFunctions sf(model, BoundaryParams::from_raw(r));
    ConvergencePoint p{t, rel_gap(-sf.coefficient(), coef_target), rel_gap(sf.functions().k_tilde_minus(u), k_target),
                       rel_gap(sf.Lambda(u, us), lambda_target)};
    report.points.push_back(p);
    x.push_back(t);
    gc.push_back(p.coefficient_gap);
    gk.push_back(p.k_gap);
    gl.push_back(p.lambda_gap);
  }
  report.coefficient_slope = fit_slope(x, gc);
  report.k_slope = fit_slope(x, gk);
  report.lambda_slope = fit_slope(x, gl);
  report.monotone = true;
  for (size_t i = 1; i < report.points.size(); ++i) {
    const ConvergencePoint &a = report.points[i - 1], &b = report.points[i];
    const bool shrinking = b.tau_tilde < a.tau_tilde;
    auto ok = [&](double ga, double gb) { return shrinking ? gb < ga : gb > ga; };
    report.monotone = report.monotone && ok(a.coefficient_gap, b.coefficient_gap) && ok(a.k_gap, b.k_gap) &&
                      ok(a.lambda_gap, b.lambda_gap);
  }
  return report;
}

BoundaryParams impose_constraint_B(const BoundaryParams& bp, Complex q, int N, int M) {
  FactorizedBoundary f = bp.factors();
  f.xi = -f.xi_tilde * f.kappa * f.mu * f.tau / (f.kappa_tilde * f.mu_tilde * f.tau_tilde) * ipow(q, N - 1 - 2 * M);
  return BoundaryParams::from_factorized(f);
}

BoundaryParams impose_constraint_C(const BoundaryParams& bp, Complex q, int N, int M_hat) {
  FactorizedBoundary f = bp.factors();
  f.xi = -f.xi_tilde * f.kappa_tilde * f.tau_tilde * f.mu / (f.kappa * f.tau * f.mu_tilde) * ipow(q, 2 * M_hat + 1 - N);
  return BoundaryParams::from_factorized(f);
}

BoundaryParams impose_both_constraints(const BoundaryParams& bp, Complex q, int N, int M) {
  FactorizedBoundary f = bp.factors();
  f.kappa_tilde = f.kappa * f.tau / f.tau_tilde;
  return impose_constraint_B(BoundaryParams::from_factorized(f), q, N, M);
}

double constraint_B_residual(const BoundaryParams& bp, Complex q, int N, int M) {
  const Complex lhs = -bp.kappa_tilde * bp.mu_tilde * bp.tau_tilde * bp.xi / (bp.kappa * bp.mu * bp.tau * bp.xi_tilde) *
                      ipow(q, 1 + 2 * M - N);
  return std::abs(lhs - 1.0);
}

double constraint_C_residual(const BoundaryParams& bp, Complex q, int N, int M_hat) {
  const Complex lhs = -bp.kappa_tilde * bp.tau_tilde * bp.mu * bp.xi_tilde / (bp.kappa * bp.tau * bp.mu_tilde * bp.xi) *
                      ipow(q, 2 * M_hat + 1 - N);
  return std::abs(lhs - 1.0);
}

ConstraintReport constraint_detector(const ModelParams& model, const BoundaryParams& bp, int M, int M_hat, int m0,
                                     std::uint64_t seed, double tol) {
  ConstraintReport r;
  const int N = model.N();
  r.residualB = constraint_B_residual(bp, model.q, N, M);
  r.residualC = constraint_C_residual(bp, model.q, N, M_hat);
  r.holdsB = r.residualB <= tol;
  r.holdsC = r.residualC <= tol;
  if (!r.holdsB && !r.holdsC) return r;

  const OpenChain chain(model, bp);
  const Scalars& s = chain.scalars();
  Sampler sampler(seed);
  constexpr int kProbes = 3;
  if (r.holdsB) {
    const BetheSystem sys(chain, m0, M);
    for (int k = 0; k < kProbes; ++k) {
      const std::vector<Complex> us = sampler.roots(M, s, model.v);
      std::vector<Complex> others = model.v;
      others.insert(others.end(), us.begin(), us.end());
      r.extraB = std::max(r.extraB, sys.extra_terms_norm(sampler.spectral_point(s, others), us));
    }
  }
  if (r.holdsC) {
    const DualBetheSystem sys(chain, m0, M_hat);
    for (int k = 0; k < kProbes; ++k) {
      const std::vector<Complex> us = sampler.roots(M_hat, s, model.v);
      std::vector<Complex> others = model.v;
      others.insert(others.end(), us.begin(), us.end());
      r.extraC = std::max(r.extraC, sys.extra_terms_norm(sampler.spectral_point(s, others), us));
    }
  }
  return r;
}

}  // namespace xxz

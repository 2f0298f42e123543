#include "xxz/spectral.hpp"

#include "xxz/gauge.hpp"

namespace xxz {

Complex lambda_product(const Scalars& s, const std::vector<Complex>& v, Complex u) {
  const Complex q = s.q();
  Complex p = 1.0;
  for (Complex vi : v) p *= s.b(q * u / vi) * s.b(q * u * vi);
  return p;
}

SpectralFunctions::SpectralFunctions(ModelParams model, BoundaryParams bp, Construction kind)
    : model_(std::move(model)), bf_(model_.q, std::move(bp)), kind_(kind) {
  if (!bf_.params().factorized()) throw InvalidParams("spectral functions need factorized boundary parameters");
}

Complex SpectralFunctions::coefficient() const {
  const BoundaryParams& p = bf_.params();
  const Complex q = scalars().q();
  const int N = model_.N();
  const Complex r1 = p.kappa * p.tau / (p.kappa_tilde * p.tau_tilde);
  const Complex r2 = p.xi * p.mu_tilde / (p.xi_tilde * p.mu);
  const int e = kind_ == Construction::B ? N + 1 : -N - 1;
  return p.kappa * p.kappa_tilde * p.tau * p.tau_tilde * (r1 + 1.0 / r1 + r2 * ipow(q, e) + ipow(q, -e) / r2);
}

SpectralComponents SpectralFunctions::at(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = scalars();
  const Complex q = s.q();
  const Complex ui = 1.0 / (q * u);
  const Complex a1 = first(u), a2 = second(u);
  const Complex f = s.product(&Scalars::f, u, us), h = s.product(&Scalars::h, u, us);
  const Complex L1 = lambda(u), L2 = lambda(ui);
  const Complex km1 = bf_.k_tilde_minus(a1), km2 = bf_.k_tilde_minus(a2);
  SpectralComponents c;
  c.lambda_gd = s.phi(u) * bf_.k_tilde_plus(a1) * km1 * L1 * f + s.phi(ui) * bf_.k_tilde_plus(a2) * km2 * L2 * h;
  c.lambda_ps = u * s.phi(ui) * (km1 * L1 * f - km2 * L2 * h);
  c.lambda_g = -coefficient() * Scalars::c(u) * Scalars::c(ui) * L1 * L2 * s.product(&Scalars::G, u, us);
  return c;
}

RootComponents SpectralFunctions::at_root(size_t i, const std::vector<Complex>& us) const {
  const Scalars& s = scalars();
  const Complex q = s.q();
  const Complex u = us.at(i);
  const Complex ui = 1.0 / (q * u);
  const std::vector<Complex> others = remove_at(us, i);
  const Complex a1 = first(u), a2 = second(u);
  const Complex f = s.product(&Scalars::f, u, others), h = s.product(&Scalars::h, u, others);
  const Complex L1 = lambda(u), L2 = lambda(ui);
  const Complex km1 = bf_.k_tilde_minus(a1), km2 = bf_.k_tilde_minus(a2);
  const Complex pu = s.phi(u), pui = s.phi(ui);
  RootComponents r;
  r.E_gd = pui * pu * (bf_.k_tilde_plus(a1) * km1 * L1 * f - bf_.k_tilde_plus(a2) * km2 * L2 * h);
  r.W = u * pui * (km1 * L1 * f - km2 * L2 * h);
  r.E_ps = u * pui * (pui * km1 * L1 * f + pu * km2 * L2 * h);
  r.E_g = coefficient() * Scalars::c(u) * Scalars::c(ui) / guard(s.b(q * u * u), "b(q u_i^2) in E_g") * L1 * L2 *
          s.product(&Scalars::G, u, others);
  return r;
}

Complex SpectralFunctions::E_limit(size_t i, const std::vector<Complex>& us, double eps) const {
  const Complex ui = us.at(i);
  const Complex u = ui * (1.0 + eps);
  return scalars().b(ui / u) * Lambda(u, us);
}

Complex SpectralFunctions::reduced(size_t i, const std::vector<Complex>& us) const {
  const Scalars& s = scalars();
  const Complex q = s.q();
  const Complex u = us.at(i);
  const Complex ui = 1.0 / (q * u);
  const std::vector<Complex> others = remove_at(us, i);
  const Complex a1 = first(u), a2 = second(u);
  const Complex f = s.product(&Scalars::f, u, others), h = s.product(&Scalars::h, u, others);
  const Complex L1 = lambda(u), L2 = lambda(ui);
  const Complex qd = q - 1.0 / q;
  return (bf_.k_tilde_plus(a1) * bf_.k_tilde_minus(a1) * L1 * f - bf_.k_tilde_plus(a2) * bf_.k_tilde_minus(a2) * L2 * h) /
             guard(s.b(q * u * u), "b(q u_i^2) in the reduced Bethe equation") -
         qd * qd * coefficient() * L1 * L2 * s.product(&Scalars::G, u, others);
}

double SpectralFunctions::normalized_residual(size_t i, const std::vector<Complex>& us) const {
  const std::vector<Complex> others = remove_at(us, i);
  const SpectralComponents c = at(us.at(i), others);
  return std::abs(E(i, us)) / (std::abs(c.lambda_gd) + std::abs(c.lambda_g) + 1e-300);
}

TriangularSpectralFunctions::TriangularSpectralFunctions(ModelParams model, BoundaryParams bp)
    : model_(std::move(model)), bf_(model_.q, std::move(bp)) {
  if (!bf_.params().left_factorized) throw InvalidParams("triangular spectral functions need a factorized left boundary");
}

Complex TriangularSpectralFunctions::coefficient() const {
  const BoundaryParams& p = bf_.params();
  const Complex q = scalars().q();
  return kI * p.kappa * p.kappa_tilde *
         (p.nu_minus * ipow(q, -model_.N() - 1) * p.xi_tilde / p.xi + kI * p.kappa / p.kappa_tilde * p.tau * p.tau);
}

Complex TriangularSpectralFunctions::Lambda_d(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = scalars();
  const Complex ui = 1.0 / (s.q() * u);
  return s.phi(u) * bf_.k_tilde_plus(u) * xk(u) * lambda_product(s, model_.v, u) * s.product(&Scalars::f, u, us) +
         s.phi(ui) * bf_.k_tilde_plus(ui) * xk(ui) * lambda_product(s, model_.v, ui) * s.product(&Scalars::h, u, us);
}

Complex TriangularSpectralFunctions::E_d(size_t i, const std::vector<Complex>& us) const {
  const Scalars& s = scalars();
  const Complex u = us.at(i);
  const Complex ui = 1.0 / (s.q() * u);
  const std::vector<Complex> others = remove_at(us, i);
  return s.phi(ui) * s.phi(u) *
         (bf_.k_tilde_plus(u) * xk(u) * lambda_product(s, model_.v, u) * s.product(&Scalars::f, u, others) -
          bf_.k_tilde_plus(ui) * xk(ui) * lambda_product(s, model_.v, ui) * s.product(&Scalars::h, u, others));
}

Complex TriangularSpectralFunctions::Lambda_gup(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = scalars();
  const Complex ui = 1.0 / (s.q() * u);
  return coefficient() * Scalars::c(u) * Scalars::c(ui) * lambda_product(s, model_.v, u) *
         lambda_product(s, model_.v, ui) * s.product(&Scalars::G, u, us);
}

Complex TriangularSpectralFunctions::E_gup(size_t i, const std::vector<Complex>& us) const {
  const Scalars& s = scalars();
  const Complex u = us.at(i);
  const Complex ui = 1.0 / (s.q() * u);
  const std::vector<Complex> others = remove_at(us, i);
  return -coefficient() * Scalars::c(u) * Scalars::c(ui) / guard(s.b(s.q() * u * u), "b(q u_i^2) in E_gup") *
         lambda_product(s, model_.v, u) * lambda_product(s, model_.v, ui) * s.product(&Scalars::G, u, others);
}

}  // namespace xxz

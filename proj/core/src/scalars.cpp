#include "xxz/scalars.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace xxz {

double relative_residual(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

Complex guard(Complex d, const char* what) {
  if (!(std::abs(d) >= kGenericEps)) throw SingularPoint(what);
  return d;
}

Complex ipow(Complex z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex out = 1.0;
  Complex base = z;
  while (n) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

void ModelParams::validate() const {
  if (std::abs(q) < kGenericEps) throw InvalidParams("q must be nonzero");
  if (v.empty()) throw InvalidParams("chain length N must be positive");
  const int kmax = 2 * N() + 4;
  Complex qk = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    qk *= q;
    if (std::abs(qk - 1.0) < kGenericEps)
      throw InvalidParams("q is a root of unity of order " + std::to_string(k));
  }
  for (Complex vi : v)
    if (std::abs(vi) < kGenericEps) throw InvalidParams("inhomogeneities must be nonzero");
}

bool ModelParams::inhomogeneities_generic(double eps) const {
  Scalars s(q);
  auto ok = [&](Complex z) { return std::abs(s.b(z)) >= eps; };
  for (int i = 0; i < N(); ++i) {
    if (!ok(q * v[i] * v[i])) return false;
    for (int j = i + 1; j < N(); ++j) {
      const Complex r = v[i] / v[j], p = v[i] * v[j];
      if (!ok(r) || !ok(p) || !ok(q * r) || !ok(q / r) || !ok(q * p) || !ok(p / q)) return false;
    }
  }
  return true;
}

ModelParams ModelParams::homogeneous(Complex q, int N) {
  ModelParams p;
  p.q = q;
  p.v.assign(static_cast<size_t>(N), Complex(1.0, 0.0));
  return p;
}

Complex reciprocal_pair_root(Complex s) {
  const Complex disc = std::sqrt(s * s - 4.0);
  const Complex x1 = 0.5 * (s + disc);
  const Complex x2 = 0.5 * (s - disc);
  const double a1 = std::abs(x1), a2 = std::abs(x2);
  if (std::abs(a1 - a2) <= 1e-12 * std::max(a1, a2)) return std::arg(x1) >= std::arg(x2) ? x1 : x2;
  return a1 > a2 ? x1 : x2;
}

namespace {

// (x, y) with x = a/a~ and y = a a~  ->  (a, a~)
std::pair<Complex, Complex> factor_pair(Complex ratio, Complex product) {
  const Complex a = std::sqrt(ratio * product);
  return {a, a / ratio};
}

}  // namespace

BoundaryParams BoundaryParams::from_factorized(const FactorizedBoundary& f) {
  BoundaryParams bp;
  bp.xi = f.xi;
  bp.xi_tilde = f.xi_tilde;
  bp.kappa = f.kappa;
  bp.kappa_tilde = f.kappa_tilde;
  bp.mu = f.mu;
  bp.mu_tilde = f.mu_tilde;
  bp.tau = f.tau;
  bp.tau_tilde = f.tau_tilde;
  const Complex kk = kI * f.kappa_tilde * f.kappa;
  bp.eps_minus = kk * (f.xi / f.xi_tilde + f.xi_tilde / f.xi);
  bp.eps_plus = kk * (f.xi * f.xi_tilde + 1.0 / (f.xi * f.xi_tilde));
  const Complex tt = kI * f.tau_tilde * f.tau;
  bp.nu_minus = tt * (f.mu / f.mu_tilde + f.mu_tilde / f.mu);
  bp.nu_plus = tt * (f.mu * f.mu_tilde + 1.0 / (f.mu * f.mu_tilde));
  bp.left_factorized = bp.right_factorized = true;
  return bp;
}

BoundaryParams BoundaryParams::from_raw(const RawBoundary& r) {
  BoundaryParams bp;
  bp.eps_plus = r.eps_plus;
  bp.eps_minus = r.eps_minus;
  bp.kappa = r.kappa;
  bp.kappa_tilde = r.kappa_tilde;
  bp.nu_plus = r.nu_plus;
  bp.nu_minus = r.nu_minus;
  bp.tau = r.tau;
  bp.tau_tilde = r.tau_tilde;

  const Complex kk = kI * r.kappa_tilde * r.kappa;
  if (kk != 0.0) {
    const auto [xi, xit] = factor_pair(reciprocal_pair_root(r.eps_minus / kk), reciprocal_pair_root(r.eps_plus / kk));
    bp.xi = xi;
    bp.xi_tilde = xit;
    bp.left_factorized = true;
  }
  const Complex tt = kI * r.tau_tilde * r.tau;
  if (tt != 0.0) {
    const auto [mu, mut] = factor_pair(reciprocal_pair_root(r.nu_minus / tt), reciprocal_pair_root(r.nu_plus / tt));
    bp.mu = mu;
    bp.mu_tilde = mut;
    bp.right_factorized = true;
  }
  return bp;
}

BoundaryParams BoundaryParams::from_parts(const RawBoundary& r, const FactorizedBoundary& f) {
  BoundaryParams bp = from_factorized(f);
  bp.eps_plus = r.eps_plus;
  bp.eps_minus = r.eps_minus;
  bp.nu_plus = r.nu_plus;
  bp.nu_minus = r.nu_minus;
  return bp;
}

RawBoundary BoundaryParams::raw() const {
  return {eps_plus, eps_minus, kappa, kappa_tilde, nu_plus, nu_minus, tau, tau_tilde};
}

FactorizedBoundary BoundaryParams::factors() const {
  if (!factorized()) throw InvalidParams("boundary parameters are not in factorized form");
  return {xi, xi_tilde, kappa, kappa_tilde, mu, mu_tilde, tau, tau_tilde};
}

double BoundaryParams::consistency_residual() const {
  double worst = 0.0;
  if (left_factorized) {
    const Complex kk = kI * kappa_tilde * kappa;
    worst = std::max(worst, relative_residual(eps_minus, kk * (xi / xi_tilde + xi_tilde / xi)));
    worst = std::max(worst, relative_residual(eps_plus, kk * (xi * xi_tilde + 1.0 / (xi * xi_tilde))));
  }
  if (right_factorized) {
    const Complex tt = kI * tau_tilde * tau;
    worst = std::max(worst, relative_residual(nu_minus, tt * (mu / mu_tilde + mu_tilde / mu)));
    worst = std::max(worst, relative_residual(nu_plus, tt * (mu * mu_tilde + 1.0 / (mu * mu_tilde))));
  }
  return worst;
}

BoundaryParams BoundaryParams::swapped_factors() const {
  BoundaryParams out = *this;
  std::swap(out.mu, out.mu_tilde);
  std::swap(out.xi, out.xi_tilde);
  return out;
}

Complex gamma(Complex u, int m, const GaugeFrame& frame, Complex q) {
  if (u == 0.0) throw ZeroArgument("gamma");
  return frame.alpha * ipow(q, -m) * u - frame.beta * ipow(q, m) / u;
}

void validate_window(const GaugeFrame& frame, Complex q, int m0, int N) {
  for (int m = m0 - 2 * N - 2; m <= m0 + 2 * N + 2; ++m)
    if (std::abs(gamma_m(m, frame, q)) < kGenericEps)
      throw SingularPoint("gamma_" + std::to_string(m) + " vanishes for this gauge frame");
}

std::string_view to_string(Structural s) {
  static constexpr std::array<std::string_view, 14> names = {"f", "g", "w", "h", "k", "n", "s",
                                                             "x", "y", "r", "q_fn", "G", "F", "F_tilde"};
  return names[static_cast<size_t>(s)];
}

std::optional<Structural> structural_from_string(std::string_view name) {
  for (int i = 0; i < 14; ++i)
    if (to_string(static_cast<Structural>(i)) == name) return static_cast<Structural>(i);
  return std::nullopt;
}

Scalars::Scalars(Complex q) : q_(q), qdiff_(q - 1.0 / q) {
  if (std::abs(qdiff_) < kGenericEps) throw InvalidParams("q - 1/q vanishes");
}

Complex Scalars::b(Complex u) const {
  if (u == 0.0) throw ZeroArgument("b");
  return (u - 1.0 / u) / qdiff_;
}

Complex Scalars::c(Complex u) {
  if (u == 0.0) throw ZeroArgument("c");
  const Complex u2 = u * u;
  return u2 - 1.0 / u2;
}

Complex Scalars::phi(Complex u) const {
  const Complex u2 = u * u;
  return b(q_ * q_ * u2) / guard(b(q_ * u2), "b(q u^2) in phi");
}

Complex Scalars::f(Complex u, Complex v) const {
  return b(q_ * v / u) * b(u * v) / (guard(b(v / u), "b(v/u) in f") * guard(b(q_ * u * v), "b(quv) in f"));
}

Complex Scalars::g(Complex u, Complex v) const {
  return phi(1.0 / (q_ * v)) / guard(b(u / v), "b(u/v) in g");
}

Complex Scalars::w(Complex u, Complex v) const { return -1.0 / guard(b(q_ * u * v), "b(quv) in w"); }

Complex Scalars::h(Complex u, Complex v) const {
  return b(q_ * q_ * u * v) * b(q_ * u / v) /
         (guard(b(q_ * u * v), "b(quv) in h") * guard(b(u / v), "b(u/v) in h"));
}

Complex Scalars::k(Complex u, Complex v) const { return phi(u) / guard(b(v / u), "b(v/u) in k"); }

Complex Scalars::n(Complex u, Complex v) const {
  return phi(u) * phi(1.0 / (q_ * v)) / guard(b(q_ * u * v), "b(quv) in n");
}

Complex Scalars::s(Complex u, Complex v) const {
  return phi(1.0 / (q_ * u)) / (guard(b(v / u), "b(v/u) in s") * guard(b(q_ * v * v), "b(qv^2) in s"));
}

Complex Scalars::x(Complex u, Complex v) const {
  return phi(1.0 / (q_ * u)) * b(q_ * u / v) /
         (guard(b(u / v), "b(u/v) in x") * guard(b(q_ * u * v), "b(quv) in x"));
}

Complex Scalars::y(Complex u, Complex v) const {
  return -1.0 / (guard(b(q_ * v * v), "b(qv^2) in y") * guard(b(q_ * u * v), "b(quv) in y"));
}

Complex Scalars::r(Complex u, Complex v) const {
  return phi(1.0 / (q_ * u)) / guard(b(v / u), "b(v/u) in r");
}

Complex Scalars::q_fn(Complex u, Complex v) const {
  return b(u * v) / (guard(b(u / v), "b(u/v) in q_fn") * guard(b(q_ * u * v), "b(quv) in q_fn"));
}

Complex Scalars::G(Complex u, Complex v) const {
  return 1.0 / (guard(b(u / v), "b(u/v) in G") * guard(b(q_ * u * v), "b(quv) in G"));
}

Complex Scalars::F(Complex u, Complex v) const {
  return G(u, v) * b(q_ * q_ * u * u) / guard(phi(v), "phi(v) in F");
}

Complex Scalars::F_tilde(Complex u, Complex v) const { return (v / u) * F(u, v); }

Complex Scalars::structural(Structural which, Complex u, Complex v) const {
  switch (which) {
    case Structural::f: return f(u, v);
    case Structural::g: return g(u, v);
    case Structural::w: return w(u, v);
    case Structural::h: return h(u, v);
    case Structural::k: return k(u, v);
    case Structural::n: return n(u, v);
    case Structural::s: return s(u, v);
    case Structural::x: return x(u, v);
    case Structural::y: return y(u, v);
    case Structural::r: return r(u, v);
    case Structural::q_fn: return q_fn(u, v);
    case Structural::G: return G(u, v);
    case Structural::F: return F(u, v);
    case Structural::F_tilde: return F_tilde(u, v);
  }
  throw std::invalid_argument("unknown structural function");
}

BoundaryFunctions::BoundaryFunctions(Complex q, BoundaryParams bp) : s_(q), bp_(std::move(bp)) {}

Complex BoundaryFunctions::k_minus(Complex u) const {
  if (u == 0.0) throw ZeroArgument("k_minus");
  return bp_.nu_minus * u + bp_.nu_plus / u;
}

Complex BoundaryFunctions::k_plus(Complex u) const {
  if (u == 0.0) throw ZeroArgument("k_plus");
  return bp_.eps_plus * u + bp_.eps_minus / u;
}

Complex BoundaryFunctions::k_tilde_minus(Complex u) const {
  if (!bp_.right_factorized) throw InvalidParams("k_tilde_minus needs a factorized right boundary");
  if (u == 0.0) throw ZeroArgument("k_tilde_minus");
  const Complex mu = bp_.mu, mut = bp_.mu_tilde;
  return kI * bp_.tau_tilde * bp_.tau * (mu * u + 1.0 / (mu * u)) * (u / mut + mut / u);
}

Complex BoundaryFunctions::k_tilde_plus(Complex u) const {
  if (!bp_.left_factorized) throw InvalidParams("k_tilde_plus needs a factorized left boundary");
  if (u == 0.0) throw ZeroArgument("k_tilde_plus");
  const Complex xi = bp_.xi, xit = bp_.xi_tilde;
  return kI * bp_.kappa_tilde * bp_.kappa * (xit * u + 1.0 / (xit * u)) * (u / xi + xi / u);
}

Complex BoundaryFunctions::value(BoundaryScalar which, Complex u) const {
  switch (which) {
    case BoundaryScalar::k_minus: return k_minus(u);
    case BoundaryScalar::k_plus: return k_plus(u);
    case BoundaryScalar::k_tilde_minus: return k_tilde_minus(u);
    case BoundaryScalar::k_tilde_plus: return k_tilde_plus(u);
  }
  throw std::invalid_argument("unknown boundary scalar");
}

Complex BoundaryFunctions::a_tilde(Complex u) const { return s_.phi(u) * k_tilde_plus(u) / u; }
Complex BoundaryFunctions::d_tilde(Complex u) const { return k_tilde_plus(1.0 / (s_.q() * u)) / u; }
Complex BoundaryFunctions::a_hat(Complex u) const { return k_tilde_plus(s_.q() * u) / u; }
Complex BoundaryFunctions::d_hat(Complex u) const { return s_.phi(u) * k_tilde_plus(1.0 / u) / u; }

std::string_view to_string(DynCoeff c) {
  static constexpr std::array<std::string_view, 9> names = {
      "zeta", "zeta_tilde", "delta", "chi", "rho", "chi_bar", "chi_hat", "rho_hat", "chi_bar_hat"};
  return names[static_cast<size_t>(c)];
}

DynamicalCoefficients::DynamicalCoefficients(Complex q, BoundaryParams bp, GaugeFrame frame)
    : s_(q), bp_(std::move(bp)), frame_(frame) {}

Complex DynamicalCoefficients::gm_guarded(int m) const {
  const Complex g = gamma_m(m);
  if (std::abs(g) < kGenericEps) throw SingularPoint("gamma_" + std::to_string(m) + " vanishes");
  return g;
}

Complex DynamicalCoefficients::left_ratio() const {
  if (!bp_.left_factorized) throw InvalidParams("dynamical coefficients need a factorized left boundary");
  return kI * bp_.kappa_tilde * bp_.xi / (bp_.kappa * bp_.xi_tilde);
}

Complex DynamicalCoefficients::left_ratio_tilde() const {
  if (!bp_.left_factorized) throw InvalidParams("dynamical coefficients need a factorized left boundary");
  return kI * bp_.kappa_tilde * bp_.xi_tilde / (bp_.kappa * bp_.xi);
}

Complex DynamicalCoefficients::zeta(int m) const {
  const Complex a = frame_.alpha * ipow(s_.q(), -m - 1);
  return bp_.kappa * bp_.kappa / gm_guarded(m) * (a + left_ratio()) * (a + left_ratio_tilde());
}

Complex DynamicalCoefficients::zeta_tilde(int m) const {
  const Complex bq = frame_.beta * ipow(s_.q(), m - 1);
  return bp_.kappa * bp_.kappa / gm_guarded(m) * (bq + left_ratio()) * (bq + left_ratio_tilde());
}

Complex DynamicalCoefficients::delta(int m) const {
  const Complex a = frame_.alpha * ipow(s_.q(), -m - 1);
  const Complex bq = frame_.beta * ipow(s_.q(), m + 1);
  return bp_.kappa * bp_.kappa / gm_guarded(m + 1) * (a + left_ratio()) * (bq + left_ratio_tilde());
}

Complex DynamicalCoefficients::chi(int m) const {
  if (!bp_.left_factorized) throw InvalidParams("chi needs a factorized left boundary");
  const Complex q = s_.q();
  return kI * bp_.kappa_tilde * bp_.kappa * (q - 1.0 / q) * gamma(bp_.xi_tilde / bp_.xi, m) / gm_guarded(m - 1);
}

Complex DynamicalCoefficients::rho(int m) const {
  const Complex q = s_.q();
  return (q - 1.0 / q) * (ipow(q, -m) * frame_.alpha + ipow(q, m) * frame_.beta) / gm_guarded(m - 1);
}

Complex DynamicalCoefficients::chi_bar(int m) const { return chi(m) - delta(m) * rho(m); }

Complex DynamicalCoefficients::chi_hat(int m) const { return chi(m) * gm_guarded(m - 1) / gm_guarded(m + 1); }

Complex DynamicalCoefficients::rho_hat(int m) const { return rho(m) * gm_guarded(m - 1) / gm_guarded(m + 1); }

Complex DynamicalCoefficients::chi_bar_hat(int m) const { return chi_hat(m) - delta(m - 2) * rho_hat(m); }

Complex DynamicalCoefficients::value(DynCoeff which, int m) const {
  switch (which) {
    case DynCoeff::zeta: return zeta(m);
    case DynCoeff::zeta_tilde: return zeta_tilde(m);
    case DynCoeff::delta: return delta(m);
    case DynCoeff::chi: return chi(m);
    case DynCoeff::rho: return rho(m);
    case DynCoeff::chi_bar: return chi_bar(m);
    case DynCoeff::chi_hat: return chi_hat(m);
    case DynCoeff::rho_hat: return rho_hat(m);
    case DynCoeff::chi_bar_hat: return chi_bar_hat(m);
  }
  throw std::invalid_argument("unknown dynamical coefficient");
}

Complex DynamicalCoefficients::g(Complex u, Complex v, int m) const {
  return gamma(u / v, m + 1) / gm_guarded(m + 1) * s_.g(u, v);
}
Complex DynamicalCoefficients::w(Complex u, Complex v, int m) const {
  return gamma(u * v, m) / gm_guarded(m + 1) * s_.w(u, v);
}
Complex DynamicalCoefficients::k(Complex u, Complex v, int m) const {
  return gamma(v / u, m + 1) / gm_guarded(m + 1) * s_.k(u, v);
}
Complex DynamicalCoefficients::n(Complex u, Complex v, int m) const {
  return gamma(1.0 / (u * v), m + 2) / gm_guarded(m + 1) * s_.n(u, v);
}
Complex DynamicalCoefficients::g_hat(Complex u, Complex v, int m) const {
  return gamma(v / u, m - 1) / gm_guarded(m - 1) * s_.g(u, v);
}
Complex DynamicalCoefficients::w_hat(Complex u, Complex v, int m) const {
  return gamma(1.0 / (u * v), m) / gm_guarded(m - 1) * s_.w(u, v);
}
Complex DynamicalCoefficients::k_hat(Complex u, Complex v, int m) const {
  return gamma(u / v, m - 1) / gm_guarded(m - 1) * s_.k(u, v);
}
Complex DynamicalCoefficients::n_hat(Complex u, Complex v, int m) const {
  return gamma(u * v, m - 2) / gm_guarded(m - 1) * s_.n(u, v);
}

FunctionalRelationResiduals functional_relations(const BoundaryFunctions& bf, const DynamicalCoefficients& dc,
                                                 Complex u, Complex v, int m) {
  const Scalars& s = bf.scalars();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const Complex phv = s.phi(1.0 / (q * v));
  const Complex phu = s.phi(1.0 / (q * u));
  const Complex Ft = s.F_tilde(u, v);
  const Complex G = s.G(u, v);
  const Complex bv2 = s.b(v * v), bv2i = s.b(1.0 / (q * q * v * v));

  FunctionalRelationResiduals out{};
  const Complex chi2 = dc.chi(m + 2), rho2 = dc.rho(m + 2);
  out.plain[0] = relative_residual(bf.a_tilde(u) * dc.g(u, v, m) + bf.d_tilde(u) * dc.n(u, v, m),
                                   Ft * phv * bf.a_tilde(v) + chi2 * cu * phv);
  out.plain[1] = relative_residual(bf.a_tilde(u) * dc.w(u, v, m) + bf.d_tilde(u) * dc.k(u, v, m),
                                   -Ft * s.phi(v) * bf.d_tilde(v) - chi2 * cu);
  out.plain[2] = relative_residual(phu * dc.g(u, v, m) - dc.n(u, v, m), phv * (G * bv2 + rho2));
  out.plain[3] = relative_residual(phu * dc.w(u, v, m) - dc.k(u, v, m), -(G * bv2i + rho2));

  const Complex chih = dc.chi_hat(m - 2), rhoh = dc.rho_hat(m - 2);
  out.hatted[0] = relative_residual(bf.d_hat(u) * dc.g_hat(u, v, m) + bf.a_hat(u) * dc.n_hat(u, v, m),
                                    Ft * phv * bf.d_hat(v) + chih * cu * phv);
  out.hatted[1] = relative_residual(bf.a_hat(u) * dc.k_hat(u, v, m) + bf.d_hat(u) * dc.w_hat(u, v, m),
                                    -Ft * s.phi(v) * bf.a_hat(v) - chih * cu);
  out.hatted[2] = relative_residual(-dc.k_hat(u, v, m) + phu * dc.w_hat(u, v, m), -G * bv2i + rhoh);
  out.hatted[3] = relative_residual(phu * dc.g_hat(u, v, m) - dc.n_hat(u, v, m), phv * (G * bv2 - rhoh));
  return out;
}

KIdentityResiduals k_identities(const BoundaryFunctions& bf, Complex u, Complex v) {
  const Scalars& s = bf.scalars();
  const Complex q = s.q();
  const Complex ui = 1.0 / (q * u), vi = 1.0 / (q * v);
  KIdentityResiduals out{};
  int slot = 0;
  for (int which = 0; which < 2; ++which) {
    auto kf = [&](Complex z) { return which == 0 ? bf.k_plus(z) : bf.k_minus(z); };
    out.values[slot++] = relative_residual(s.g(u, v) * s.phi(u) * kf(u) + s.n(u, v) * kf(ui),
                                           s.F(u, v) * s.phi(vi) * s.phi(v) * kf(v));
  }
  for (int which = 0; which < 2; ++which) {
    auto kf = [&](Complex z) { return which == 0 ? bf.k_plus(z) : bf.k_minus(z); };
    out.values[slot++] = relative_residual(s.k(u, v) * kf(ui) + s.w(u, v) * s.phi(u) * kf(u),
                                           -s.F(u, v) * s.phi(v) * kf(vi));
  }
  return out;
}

}  // namespace xxz

#include "xxz/maba.hpp"

#include <array>

namespace xxz {

Complex alpha_hw(const BoundaryParams& bp, Complex q, int N, int m0) {
  return kI * ipow(q, m0 + N) * bp.tau * bp.mu / (bp.tau_tilde * bp.mu_tilde);
}

Complex beta_lw(const BoundaryParams& bp, Complex q, int N, int m0) {
  return kI * ipow(q, -m0 - N) * bp.tau * bp.mu_tilde / (bp.tau_tilde * bp.mu);
}

Complex beta_tl(const BoundaryParams& bp, Complex q, int m0, int M) {
  return -kI * ipow(q, 1 - m0 - 2 * M) * bp.xi_tilde * bp.kappa_tilde / (bp.xi * bp.kappa);
}

Complex alpha_tu(const BoundaryParams& bp, Complex q, int N, int m0, int M_hat) {
  return -kI * ipow(q, 1 + m0 + 2 * (N - M_hat)) * bp.xi * bp.kappa_tilde / (bp.xi_tilde * bp.kappa);
}

Complex alpha_d(const BoundaryParams& bp, Complex q, int m0, int M) {
  return -kI * bp.kappa_tilde * bp.xi / (bp.kappa * bp.xi_tilde) * ipow(q, m0 + 2 * M + 1);
}

Complex beta_d(const BoundaryParams& bp, Complex q, int m0, int M) {
  return -kI * bp.kappa_tilde * bp.xi_tilde / (bp.kappa * bp.xi) * ipow(q, -m0 - 2 * M + 1);
}

double vector_residual(const Vector& a, const Vector& b) {
  return (a - b).norm() / (1.0 + std::max(a.norm(), b.norm()));
}

namespace {

Vector kron_vec(const Vector& a, const Vec2& b) {
  Vector out(a.size() * 2);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out(2 * i) = a(i) * b(0);
    out(2 * i + 1) = a(i) * b(1);
  }
  return out;
}

double annihilation(const Matrix& op, const Vector& x) { return (op * x).norm() / (x.norm() * (1.0 + op.norm())); }

constexpr std::array<Complex, 3> kProbes = {Complex(0.7870, 0.2517), Complex(0.7263, -0.9168),
                                            Complex(-0.3566, 0.6140)};

}  // namespace

Vector highest_weight_state(const GaugeVectors& gv, const std::vector<Complex>& v, int m0) {
  Vector out = Vector::Ones(1);
  for (size_t i = 0; i < v.size(); ++i) out = kron_vec(out, gv.X(v[i], m0 + int(i) + 1));
  return out;
}

Vector lowest_weight_state(const GaugeVectors& gv, const std::vector<Complex>& v, int m0) {
  const int N = static_cast<int>(v.size());
  Vector out = Vector::Ones(1);
  for (int i = 0; i < N; ++i) out = kron_vec(out, gv.Y(v[i], m0 + 2 * N - (i + 1)));
  return out;
}

Vector diagonal_state(int N) {
  Vector out = Vector::Zero(Eigen::Index(1) << N);
  out(0) = 1.0;
  return out;
}

WeightActions highest_weight_actions(const DynamicalChain& dc, const Vector& omega, int m0, Complex u) {
  const Scalars& s = dc.scalars();
  const BoundaryFunctions& bf = dc.chain().functions();
  const std::vector<Complex>& v = dc.chain().model().v;
  const Complex ui = 1.0 / (s.q() * u);
  const Complex a = u * bf.k_tilde_minus(u) * lambda_product(s, v, u);
  const Complex d = u * s.phi(ui) * bf.k_tilde_minus(ui) * lambda_product(s, v, ui);
  const DynamicalFamily f = dc.family(u, m0);
  return {vector_residual(f.A * omega, a * omega), vector_residual(f.D * omega, d * omega), annihilation(f.C, omega)};
}

WeightActions lowest_weight_actions(const DynamicalChain& dc, const Vector& omega_hat, int m0, Complex u) {
  const Scalars& s = dc.scalars();
  const BoundaryFunctions& bf = dc.chain().functions();
  const std::vector<Complex>& v = dc.chain().model().v;
  const Complex q = s.q();
  const Complex ui = 1.0 / (q * u);
  const Complex a = u * s.phi(ui) * bf.k_tilde_minus(q * u) * lambda_product(s, v, ui);
  const Complex d = u * bf.k_tilde_minus(1.0 / u) * lambda_product(s, v, u);
  const DynamicalFamily f = dc.family(u, m0 + 2 * dc.chain().N());
  return {vector_residual(f.A_hat * omega_hat, a * omega_hat), vector_residual(f.D_hat * omega_hat, d * omega_hat),
          annihilation(f.B, omega_hat)};
}

namespace {

template <class Fn>
void verify_probes(Fn actions, double tol) {
  int checked = 0;
  for (Complex u : kProbes) {
    WeightActions w;
    try {
      w = actions(u);
    } catch (const SingularPoint&) {
      continue;
    }
    ++checked;
    if (!(w.diag_first <= tol)) throw ActionCheckFailed("first diagonal action", w.diag_first);
    if (!(w.diag_second <= tol)) throw ActionCheckFailed("second diagonal action", w.diag_second);
    if (!(w.annihilated <= tol)) throw ActionCheckFailed("annihilation", w.annihilated);
  }
  if (checked == 0) throw SingularPoint("every probe point is singular for this weight vector");
}

}  // namespace

WeightVector highest_weight_vector(const DynamicalChain& dc, int m0, double tol) {
  WeightVector w{highest_weight_state(dc.vectors(), dc.chain().model().v, m0), WeightKind::Highest, m0, dc.frame()};
  verify_probes([&](Complex u) { return highest_weight_actions(dc, w.vector, m0, u); }, tol);
  return w;
}

WeightVector lowest_weight_vector(const DynamicalChain& dc, int m0, double tol) {
  WeightVector w{lowest_weight_state(dc.vectors(), dc.chain().model().v, m0), WeightKind::Lowest, m0, dc.frame()};
  verify_probes([&](Complex u) { return lowest_weight_actions(dc, w.vector, m0, u); }, tol);
  return w;
}

double nilpotency_B(const DynamicalChain& dc, const std::vector<Complex>& us, int m0) {
  const int N = dc.chain().N();
  const int m = m0 + 2 * (N + 1);
  double scale = 1.0;
  for (size_t j = 0; j < us.size(); ++j) scale *= dc.family(us[j], m - 2 * int(j + 1)).B.norm();
  return dc.string_B(us, m).norm() / scale;
}

double nilpotency_C(const DynamicalChain& dc, const std::vector<Complex>& us, int m0) {
  const int m = m0 - 2;
  double scale = 1.0;
  for (size_t j = 0; j < us.size(); ++j) scale *= dc.family(us[j], m + 2 * int(j + 1)).C.norm();
  return dc.string_C(us, m).norm() / scale;
}

namespace {

GaugeFrame frame_B(const OpenChain& chain, int m0, int M) {
  const Complex q = chain.scalars().q();
  return {alpha_hw(chain.boundary(), q, chain.N(), m0), beta_tl(chain.boundary(), q, m0, M), m0};
}

GaugeFrame frame_C(const OpenChain& chain, int m0, int M_hat) {
  const Complex q = chain.scalars().q();
  return {alpha_tu(chain.boundary(), q, chain.N(), m0, M_hat), beta_lw(chain.boundary(), q, chain.N(), m0), m0};
}

}  // namespace

BetheSystem::BetheSystem(const OpenChain& chain, int m0, int M)
    : m0_(m0),
      M_(M),
      dyn_(chain, frame_B(chain, m0, M)),
      spec_(chain.model(), chain.boundary(), Construction::B),
      omega_(highest_weight_state(dyn_.vectors(), chain.model().v, m0)) {
  if (M < 0 || M > chain.N()) throw InvalidParams("number of roots must lie in 0..N");
}

Vector BetheSystem::apply_B(Complex u, int m, const Vector& x) const { return dyn_.family(u, m).B * x; }

Vector BetheSystem::vector(const std::vector<Complex>& us) const {
  if (static_cast<int>(us.size()) != M_) throw InvalidParams("root count does not match the Bethe system");
  Vector x = omega_;
  for (int j = M_; j >= 1; --j) x = apply_B(us[j - 1], m() - 2 * j, x);
  return x;
}

double BetheSystem::td_residual(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = dyn_.scalars();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const SpectralComponents L = spec_.at(u, us);
  const Complex chi = dyn_.coefficients().chi(m());
  const Vector psi = vector(us);
  Vector rhs = L.lambda_gd * psi;
  for (size_t i = 0; i < us.size(); ++i) {
    const RootComponents E = spec_.at_root(i, us);
    rhs += (s.F_tilde(u, us[i]) * E.E_gd + chi * cu * E.W) * vector(replace_at(us, i, u));
  }
  const BoundaryFunctions& bf = dyn_.chain().functions();
  const DynamicalFamily f = dyn_.family(u, m());
  return vector_residual(bf.a_tilde(u) * (f.A * psi) + bf.d_tilde(u) * (f.D * psi), rhs);
}

double BetheSystem::tps_residual(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = dyn_.scalars();
  const Complex q = s.q();
  const SpectralComponents L = spec_.at(u, us);
  const Complex rho = dyn_.coefficients().rho(m());
  const Vector psi = vector(us);
  Vector rhs = L.lambda_ps * psi;
  for (size_t i = 0; i < us.size(); ++i) {
    const RootComponents E = spec_.at_root(i, us);
    const Complex ui = us[i];
    rhs += (s.G(u, ui) * s.b(q * ui * ui) * E.E_ps + rho * E.W) * vector(replace_at(us, i, u));
  }
  const DynamicalFamily f = dyn_.family(u, m());
  return vector_residual(s.phi(1.0 / (q * u)) * (f.A * psi) - f.D * psi, rhs);
}

double BetheSystem::tlow_residual(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = dyn_.scalars();
  const DynamicalCoefficients& c = dyn_.coefficients();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const SpectralComponents L = spec_.at(u, us);
  const Complex zeta = c.zeta(m()), delta = c.delta(m()), chib = c.chi_bar(m());
  const Vector psi = vector(us);
  Vector rhs = L.lambda_gd * psi + cu * (zeta * apply_B(u, m(), psi) - delta * L.lambda_ps * psi);
  for (size_t i = 0; i < us.size(); ++i) {
    const RootComponents E = spec_.at_root(i, us);
    const Complex ui = us[i];
    rhs += (s.F_tilde(u, ui) * E.E_gd + cu * (chib * E.W - delta * s.G(u, ui) * s.b(q * ui * ui) * E.E_ps)) *
           vector(replace_at(us, i, u));
  }
  return vector_residual(dyn_.chain().transfer_matrix(u) * psi, rhs);
}

double BetheSystem::extra_terms_norm(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = dyn_.scalars();
  const DynamicalCoefficients& c = dyn_.coefficients();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const SpectralComponents L = spec_.at(u, us);
  const Complex zeta = c.zeta(m()), delta = c.delta(m()), chib = c.chi_bar(m());
  const Vector psi = vector(us);
  Vector extra = cu * (zeta * apply_B(u, m(), psi) - delta * L.lambda_ps * psi);
  for (size_t i = 0; i < us.size(); ++i) {
    const RootComponents E = spec_.at_root(i, us);
    const Complex ui = us[i];
    extra += cu * (chib * E.W - delta * s.G(u, ui) * s.b(q * ui * ui) * E.E_ps) * vector(replace_at(us, i, u));
  }
  return extra.norm() / (1.0 + (dyn_.chain().transfer_matrix(u) * psi).norm());
}

double BetheSystem::conjecture_residual(Complex u, const std::vector<Complex>& us) const {
  if (M_ != dyn_.chain().N()) throw InvalidParams("the conjectured action needs M = N");
  const Scalars& s = dyn_.scalars();
  const DynamicalCoefficients& c = dyn_.coefficients();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const SpectralComponents L = spec_.at(u, us);
  const Complex zeta = c.zeta(m()), delta = c.delta(m()), chib = c.chi_bar(m());
  const Vector psi = vector(us);
  const Vector lhs = cu * zeta * apply_B(u, m(), psi);
  Vector rhs = (L.lambda_g + cu * delta * L.lambda_ps) * psi;
  for (size_t i = 0; i < us.size(); ++i) {
    const RootComponents E = spec_.at_root(i, us);
    const Complex ui = us[i];
    rhs += (cu * (delta * s.G(u, ui) * s.b(q * ui * ui) * E.E_ps - chib * E.W) + s.F_tilde(u, ui) * E.E_g) *
           vector(replace_at(us, i, u));
  }
  return vector_residual(lhs, rhs);
}

double BetheSystem::full_residual(Complex u, const std::vector<Complex>& us) const {
  if (M_ != dyn_.chain().N()) throw InvalidParams("the full off-shell action needs M = N");
  const Scalars& s = dyn_.scalars();
  const Vector psi = vector(us);
  Vector rhs = spec_.Lambda(u, us) * psi;
  for (size_t i = 0; i < us.size(); ++i)
    rhs += s.F_tilde(u, us[i]) * spec_.E(i, us) * vector(replace_at(us, i, u));
  return vector_residual(dyn_.chain().transfer_matrix(u) * psi, rhs);
}

DualBetheSystem::DualBetheSystem(const OpenChain& chain, int m0, int M_hat)
    : m0_(m0),
      M_(M_hat),
      dyn_(chain, frame_C(chain, m0, M_hat)),
      spec_(chain.model(), chain.boundary(), Construction::C),
      omega_(lowest_weight_state(dyn_.vectors(), chain.model().v, m0)) {
  if (M_hat < 0 || M_hat > chain.N()) throw InvalidParams("number of roots must lie in 0..N");
}

Vector DualBetheSystem::vector(const std::vector<Complex>& us) const {
  if (static_cast<int>(us.size()) != M_) throw InvalidParams("root count does not match the Bethe system");
  Vector x = omega_;
  for (int j = M_; j >= 1; --j) x = dyn_.family(us[j - 1], m() + 2 * j).C * x;
  return x;
}

double DualBetheSystem::offshell_residual(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = dyn_.scalars();
  const DynamicalCoefficients& c = dyn_.coefficients();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const SpectralComponents L = spec_.at(u, us);
  const Complex zt = c.zeta_tilde(m()), delta = c.delta(m() - 2), chib = c.chi_bar_hat(m());
  const Vector psi = vector(us);
  Vector rhs = (L.lambda_gd + cu * delta * L.lambda_ps) * psi - cu * zt * (dyn_.family(u, m()).C * psi);
  for (size_t i = 0; i < us.size(); ++i) {
    const RootComponents E = spec_.at_root(i, us);
    const Complex ui = us[i];
    rhs += (s.F_tilde(u, ui) * E.E_gd + cu * (chib * E.W + delta * s.G(u, ui) * s.b(q * ui * ui) * E.E_ps)) *
           vector(replace_at(us, i, u));
  }
  return vector_residual(dyn_.chain().transfer_matrix(u) * psi, rhs);
}

double DualBetheSystem::extra_terms_norm(Complex u, const std::vector<Complex>& us) const {
  const Scalars& s = dyn_.scalars();
  const DynamicalCoefficients& c = dyn_.coefficients();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const SpectralComponents L = spec_.at(u, us);
  const Complex zt = c.zeta_tilde(m()), delta = c.delta(m() - 2), chib = c.chi_bar_hat(m());
  const Vector psi = vector(us);
  Vector extra = cu * delta * L.lambda_ps * psi - cu * zt * (dyn_.family(u, m()).C * psi);
  for (size_t i = 0; i < us.size(); ++i) {
    const RootComponents E = spec_.at_root(i, us);
    const Complex ui = us[i];
    extra += cu * (chib * E.W + delta * s.G(u, ui) * s.b(q * ui * ui) * E.E_ps) * vector(replace_at(us, i, u));
  }
  return extra.norm() / (1.0 + (dyn_.chain().transfer_matrix(u) * psi).norm());
}

double DualBetheSystem::conjecture_residual(Complex u, const std::vector<Complex>& us) const {
  if (M_ != dyn_.chain().N()) throw InvalidParams("the conjectured action needs M_hat = N");
  const Scalars& s = dyn_.scalars();
  const DynamicalCoefficients& c = dyn_.coefficients();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const SpectralComponents L = spec_.at(u, us);
  const Complex zt = c.zeta_tilde(m0_), delta = c.delta(m0_ - 2), chib = c.chi_bar_hat(m0_);
  const Vector psi = vector(us);
  const Vector lhs = -cu * zt * (dyn_.family(u, m0_).C * psi);
  Vector rhs = (L.lambda_g - cu * delta * L.lambda_ps) * psi;
  for (size_t i = 0; i < us.size(); ++i) {
    const RootComponents E = spec_.at_root(i, us);
    const Complex ui = us[i];
    rhs += (-cu * (delta * s.G(u, ui) * s.b(q * ui * ui) * E.E_ps + chib * E.W) + s.F_tilde(u, ui) * E.E_g) *
           vector(replace_at(us, i, u));
  }
  return vector_residual(lhs, rhs);
}

double DualBetheSystem::full_residual(Complex u, const std::vector<Complex>& us) const {
  if (M_ != dyn_.chain().N()) throw InvalidParams("the full off-shell action needs M_hat = N");
  const Scalars& s = dyn_.scalars();
  const Vector psi = vector(us);
  Vector rhs = spec_.Lambda(u, us) * psi;
  for (size_t i = 0; i < us.size(); ++i)
    rhs += s.F_tilde(u, us[i]) * spec_.E(i, us) * vector(replace_at(us, i, u));
  return vector_residual(dyn_.chain().transfer_matrix(u) * psi, rhs);
}

}  // namespace xxz

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xxz {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Denominators below this magnitude count as zero.
inline constexpr double kGenericEps = 1e-6;

class SingularPoint : public std::domain_error {
 public:
  explicit SingularPoint(const std::string& where)
      : std::domain_error("singular point: " + where) {}
};

class ZeroArgument : public SingularPoint {
 public:
  explicit ZeroArgument(const std::string& where) : SingularPoint("zero argument in " + where) {}
};

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// |lhs - rhs| / (1 + max(|lhs|, |rhs|))
double relative_residual(Complex lhs, Complex rhs);

// Returns d, or throws SingularPoint naming `what` when |d| < kGenericEps.
Complex guard(Complex d, const char* what);

// Exact integer power.
Complex ipow(Complex z, int n);

struct ModelParams {
  Complex q{2.0, 0.0};
  std::vector<Complex> v;

  int N() const { return static_cast<int>(v.size()); }
  // q nonzero and not a low-order root of unity, v_i nonzero.
  void validate() const;
  // Stricter check used for identity tests: ratios and products of the
  // inhomogeneities keep b(.) away from zero.
  bool inhomogeneities_generic(double eps = kGenericEps) const;

  static ModelParams homogeneous(Complex q, int N);
};

struct FactorizedBoundary {
  Complex xi, xi_tilde, kappa, kappa_tilde;
  Complex mu, mu_tilde, tau, tau_tilde;
};

struct RawBoundary {
  Complex eps_plus, eps_minus, kappa, kappa_tilde;
  Complex nu_plus, nu_minus, tau, tau_tilde;
};

struct BoundaryParams {
  // left (K+)
  Complex eps_plus, eps_minus, kappa, kappa_tilde;
  Complex xi{1.0}, xi_tilde{1.0};
  // right (K-)
  Complex nu_plus, nu_minus, tau, tau_tilde;
  Complex mu{1.0}, mu_tilde{1.0};

  bool left_factorized = false;
  bool right_factorized = false;

  static BoundaryParams from_factorized(const FactorizedBoundary& f);
  // Recovers the factors when kappa*kappa_tilde (tau*tau_tilde) is nonzero;
  // otherwise that side is left unfactorized (triangular limit).
  static BoundaryParams from_raw(const RawBoundary& r);
  // Takes both sets verbatim, no consistency enforced. Used for negative controls.
  static BoundaryParams from_parts(const RawBoundary& r, const FactorizedBoundary& f);

  RawBoundary raw() const;
  FactorizedBoundary factors() const;  // throws InvalidParams unless both sides factorized
  bool factorized() const { return left_factorized && right_factorized; }

  // max relative mismatch of (nu, eps) against the stored factors
  double consistency_residual() const;

  // mu <-> mu_tilde and xi <-> xi_tilde
  BoundaryParams swapped_factors() const;
};

// Solves x + 1/x = s, returning the root with |x| >= 1 (ties: larger arg).
Complex reciprocal_pair_root(Complex s);

struct GaugeFrame {
  Complex alpha{1.0};
  Complex beta{1.0};
  int m = 0;
};

// alpha q^{-m} u - beta q^{m} / u
Complex gamma(Complex u, int m, const GaugeFrame& frame, Complex q);
inline Complex gamma_m(int m, const GaugeFrame& frame, Complex q) { return gamma(1.0, m, frame, q); }
// Throws SingularPoint if some gamma_m vanishes for m in [m0 - 2N - 2, m0 + 2N + 2].
void validate_window(const GaugeFrame& frame, Complex q, int m0, int N);

enum class Structural { f, g, w, h, k, n, s, x, y, r, q_fn, G, F, F_tilde };
std::string_view to_string(Structural s);
std::optional<Structural> structural_from_string(std::string_view name);

// Scalar functions that depend on q only.
class Scalars {
 public:
  explicit Scalars(Complex q);

  Complex q() const { return q_; }
  Complex b(Complex u) const;
  static Complex c(Complex u);
  Complex phi(Complex u) const;

  Complex f(Complex u, Complex v) const;
  Complex g(Complex u, Complex v) const;
  Complex w(Complex u, Complex v) const;
  Complex h(Complex u, Complex v) const;
  Complex k(Complex u, Complex v) const;
  Complex n(Complex u, Complex v) const;
  Complex s(Complex u, Complex v) const;
  Complex x(Complex u, Complex v) const;
  Complex y(Complex u, Complex v) const;
  Complex r(Complex u, Complex v) const;
  Complex q_fn(Complex u, Complex v) const;
  Complex G(Complex u, Complex v) const;
  Complex F(Complex u, Complex v) const;
  Complex F_tilde(Complex u, Complex v) const;

  Complex structural(Structural which, Complex u, Complex v) const;

  // prod_j fn(u, us[j])
  template <class Fn>
  Complex product(Fn fn, Complex u, const std::vector<Complex>& us) const {
    Complex p = 1.0;
    for (Complex x : us) p *= (this->*fn)(u, x);
    return p;
  }

 private:
  Complex q_;
  Complex qdiff_;
};

enum class BoundaryScalar { k_minus, k_plus, k_tilde_minus, k_tilde_plus };

class BoundaryFunctions {
 public:
  BoundaryFunctions(Complex q, BoundaryParams bp);

  const BoundaryParams& params() const { return bp_; }
  const Scalars& scalars() const { return s_; }

  Complex k_minus(Complex u) const;
  Complex k_plus(Complex u) const;
  Complex k_tilde_minus(Complex u) const;
  Complex k_tilde_plus(Complex u) const;
  Complex value(BoundaryScalar which, Complex u) const;

  Complex a_tilde(Complex u) const;  // phi(u) k~+(u) / u
  Complex d_tilde(Complex u) const;  // k~+(1/(qu)) / u
  Complex a_hat(Complex u) const;    // k~+(qu) / u
  Complex d_hat(Complex u) const;    // phi(u) k~+(1/u) / u

 private:
  Scalars s_;
  BoundaryParams bp_;
};

enum class DynCoeff { zeta, zeta_tilde, delta, chi, rho, chi_bar, chi_hat, rho_hat, chi_bar_hat };
std::string_view to_string(DynCoeff c);

// Coefficients of the dynamical decomposition and the m-dependent
// structure functions of the dynamical exchange relations.
class DynamicalCoefficients {
 public:
  DynamicalCoefficients(Complex q, BoundaryParams bp, GaugeFrame frame);

  const GaugeFrame& frame() const { return frame_; }
  const Scalars& scalars() const { return s_; }

  Complex gamma(Complex u, int m) const { return xxz::gamma(u, m, frame_, s_.q()); }
  Complex gamma_m(int m) const { return xxz::gamma(1.0, m, frame_, s_.q()); }

  Complex zeta(int m) const;
  Complex zeta_tilde(int m) const;
  Complex delta(int m) const;
  Complex chi(int m) const;
  Complex rho(int m) const;
  Complex chi_bar(int m) const;
  Complex chi_hat(int m) const;
  Complex rho_hat(int m) const;
  Complex chi_bar_hat(int m) const;
  Complex value(DynCoeff which, int m) const;

  Complex g(Complex u, Complex v, int m) const;
  Complex w(Complex u, Complex v, int m) const;
  Complex k(Complex u, Complex v, int m) const;
  Complex n(Complex u, Complex v, int m) const;
  Complex g_hat(Complex u, Complex v, int m) const;
  Complex w_hat(Complex u, Complex v, int m) const;
  Complex k_hat(Complex u, Complex v, int m) const;
  Complex n_hat(Complex u, Complex v, int m) const;

 private:
  Complex gm_guarded(int m) const;
  Complex left_ratio() const;        // i kappa~ xi / (kappa xi~)
  Complex left_ratio_tilde() const;  // i kappa~ xi~ / (kappa xi)

  Scalars s_;
  BoundaryParams bp_;
  GaugeFrame frame_;
};

// Residuals of the four functional relations among (a~, d~) and the
// m-dependent coefficients, and of the four hatted ones.
struct FunctionalRelationResiduals {
  double plain[4];
  double hatted[4];
};
FunctionalRelationResiduals functional_relations(const BoundaryFunctions& bf, const DynamicalCoefficients& dc,
                                                 Complex u, Complex v, int m);

// Residuals of the two k-identities for k = k+ and k = k- (order: first k+, first k-, second k+, second k-).
struct KIdentityResiduals {
  double values[4];
};
KIdentityResiduals k_identities(const BoundaryFunctions& bf, Complex u, Complex v);

}  // namespace xxz

#include "xxz/transfer.hpp"

namespace xxz {

std::string_view to_string(Relation r) {
  static constexpr std::array<std::string_view, 12> names = {"AB", "CA", "DB", "CD", "CB", "AD",
                                                             "AA", "DD", "BB", "CC", "AhatC", "DhatC"};
  return names[static_cast<size_t>(r)];
}

OpenChain::OpenChain(ModelParams model, BoundaryParams bp) : model_(std::move(model)), k_(model_.q, std::move(bp)) {
  model_.validate();
}

QuantumOperator OpenChain::double_row_monodromy(Complex u) const {
  const int n = N() + 1;
  const Eigen::Index d = Eigen::Index(1) << N();
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  const Matrix km = k_.minus(u);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m.block(a * d, b * d, d, d).diagonal().setConstant(km(a, b));
  for (int i = N(); i >= 1; --i) apply_gate_left(m, n, r_matrix(u / model_.v[i - 1], scalars()), {0, i});
  for (int i = N(); i >= 1; --i) apply_gate_right(m, n, r_matrix(u * model_.v[i - 1], scalars()), {0, i});
  return QuantumOperator(chain_layout(N(), 1), std::move(m));
}

MonodromyBlocks OpenChain::blocks(Complex u) const {
  const QuantumOperator k = double_row_monodromy(u);
  const Eigen::Index d = Eigen::Index(1) << N();
  const Matrix& m = k.matrix();
  return {u, m.topLeftCorner(d, d), m.topRightCorner(d, d), m.bottomLeftCorner(d, d), m.bottomRightCorner(d, d)};
}

OperatorFamily OpenChain::family(Complex u) const { return family(blocks(u)); }

OperatorFamily OpenChain::family(const MonodromyBlocks& k) const {
  const Complex inv = 1.0 / guard(scalars().b(scalars().q() * k.u * k.u), "b(q u^2) in the operator family");
  OperatorFamily f;
  f.A = k.K11;
  f.B = k.K12;
  f.C = k.K21;
  f.D = k.K22 - inv * k.K11;
  f.D_hat = k.K22;
  f.A_hat = k.K11 - inv * k.K22;
  return f;
}

Matrix OpenChain::transfer_matrix(Complex u) const {
  const MonodromyBlocks k = blocks(u);
  const Matrix kp = k_.plus(u);
  return kp(0, 0) * k.K11 + kp(0, 1) * k.K21 + kp(1, 0) * k.K12 + kp(1, 1) * k.K22;
}

Matrix OpenChain::transfer_expanded(Complex u) const {
  const OperatorFamily f = family(u);
  const Scalars& s = scalars();
  const BoundaryFunctions& bf = functions();
  const BoundaryParams& p = boundary();
  const Complex q = s.q();
  return s.phi(u) * bf.k_plus(u) * f.A + bf.k_plus(1.0 / (q * u)) * f.D +
         Scalars::c(q * u) * (p.kappa * p.kappa * f.B + p.kappa_tilde * p.kappa_tilde * f.C);
}

Matrix OpenChain::transfer_hatted(Complex u) const {
  const OperatorFamily f = family(u);
  const Scalars& s = scalars();
  const BoundaryFunctions& bf = functions();
  const BoundaryParams& p = boundary();
  const Complex q = s.q();
  return bf.k_plus(q * u) * f.A_hat + s.phi(u) * bf.k_plus(1.0 / u) * f.D_hat +
         Scalars::c(q * u) * (p.kappa * p.kappa * f.B + p.kappa_tilde * p.kappa_tilde * f.C);
}

double OpenChain::check_commutation(Relation r, Complex u, Complex v) const {
  const Scalars& s = scalars();
  // coefficients first, so a singular point is reported before any operator work
  const Complex f = s.f(u, v), g = s.g(u, v), w = s.w(u, v), h = s.h(u, v), k = s.k(u, v), n = s.n(u, v);
  const OperatorFamily U = family(u);
  const OperatorFamily V = family(v);
  Matrix lhs, rhs;
  switch (r) {
    case Relation::AB:
      lhs = U.A * V.B;
      rhs = f * V.B * U.A + g * U.B * V.A + w * U.B * V.D;
      break;
    case Relation::CA:
      lhs = V.C * U.A;
      rhs = f * U.A * V.C + g * V.A * U.C + w * V.D * U.C;
      break;
    case Relation::DB:
      lhs = U.D * V.B;
      rhs = h * V.B * U.D + k * U.B * V.D + n * U.B * V.A;
      break;
    case Relation::CD:
      lhs = V.C * U.D;
      rhs = h * U.D * V.C + k * V.D * U.C + n * V.A * U.C;
      break;
    case Relation::CB:
      lhs = U.C * V.B;
      rhs = V.B * U.C + s.s(u, v) * U.A * V.A + s.x(u, v) * V.A * U.A + s.y(u, v) * U.D * V.A +
            s.r(u, v) * U.A * V.D + s.q_fn(u, v) * V.A * U.D + w * U.D * V.D;
      break;
    case Relation::AD:
      lhs = U.A * V.D;
      rhs = V.D * U.A + s.k(v, u) * (U.B * V.C - V.B * U.C);
      break;
    case Relation::AA:
      lhs = U.A * V.A;
      rhs = V.A * U.A + w * (U.B * V.C - V.B * U.C);
      break;
    case Relation::DD:
      lhs = U.D * V.D;
      rhs = V.D * U.D - s.phi(u) * s.phi(v) * w * (U.B * V.C - V.B * U.C);
      break;
    case Relation::BB:
      lhs = U.B * V.B;
      rhs = V.B * U.B;
      break;
    case Relation::CC:
      lhs = U.C * V.C;
      rhs = V.C * U.C;
      break;
    case Relation::AhatC:
      lhs = U.A_hat * V.C;
      rhs = h * V.C * U.A_hat + k * U.C * V.A_hat + n * U.C * V.D_hat;
      break;
    case Relation::DhatC:
      lhs = U.D_hat * V.C;
      rhs = f * V.C * U.D_hat + g * U.C * V.D_hat + w * U.C * V.A_hat;
      break;
  }
  return relative_residual(lhs, rhs);
}

Matrix hamiltonian_from_couplings(int N, const HamiltonianCouplings& c) {
  const Eigen::Index d = Eigen::Index(1) << N;
  Matrix H = Matrix::Zero(d, d);
  auto on = [N](Pauli p, int i) { return pauli_on_site(p, i, N).matrix(); };
  H += c.epsilon * on(Pauli::Z, 1) + c.kappa_minus * on(Pauli::Minus, 1) + c.kappa_plus * on(Pauli::Plus, 1);
  for (int k = 1; k < N; ++k)
    H += on(Pauli::X, k) * on(Pauli::X, k + 1) + on(Pauli::Y, k) * on(Pauli::Y, k + 1) +
         c.delta * on(Pauli::Z, k) * on(Pauli::Z, k + 1);
  H += c.nu * on(Pauli::Z, N) + c.tau_minus * on(Pauli::Minus, N) + c.tau_plus * on(Pauli::Plus, N);
  return H;
}

Matrix OpenChain::hamiltonian_direct() const {
  return hamiltonian_from_couplings(N(), hamiltonian_couplings(boundary(), scalars().q()));
}

TransferHamiltonian OpenChain::hamiltonian_from_transfer(double h) const {
  for (Complex vi : model_.v)
    if (vi != 1.0) throw InvalidParams("hamiltonian_from_transfer needs the homogeneous point v_i = 1");
  auto deriv = [this](double step) -> Matrix {
    return (transfer_matrix(1.0 - 2 * step) - 8.0 * transfer_matrix(1.0 - step) + 8.0 * transfer_matrix(1.0 + step) -
            transfer_matrix(1.0 + 2 * step)) /
           Complex(12.0 * step);
  };
  const Matrix d1 = deriv(h);
  const Matrix d2 = deriv(0.5 * h);
  const Matrix d = d2 + (d2 - d1) / Complex(15.0);
  const Matrix t1 = transfer_matrix(1.0);

  TransferHamiltonian out;
  out.richardson_gap = (d2 - d1).norm() / std::max(d.norm(), 1e-300);
  if (!(out.richardson_gap < 1e-2)) throw DerivativeUnstable("Richardson estimate of t'(1) did not settle");
  out.commutator_norm = (t1 * d - d * t1).norm() / std::max(t1.norm() * d.norm(), 1e-300);
  const Complex scale = t1.trace() / Complex(double(t1.rows()));
  out.t1_identity_deviation = (t1 - scale * Matrix::Identity(t1.rows(), t1.cols())).norm() / t1.norm();

  const Complex q = scalars().q();
  const double n = N();
  const Complex shift = n * (q + 1.0 / q) / 2.0 + (q - 1.0 / q) * (q - 1.0 / q) / (2.0 * (q + 1.0 / q));
  const Eigen::PartialPivLU<Matrix> lu(t1);
  out.H = 0.5 * (q - 1.0 / q) * lu.solve(d) - shift * Matrix::Identity(t1.rows(), t1.cols());
  return out;
}

Matrix reverse_sites(const Matrix& m, int N) {
  const Eigen::Index d = Eigen::Index(1) << N;
  std::vector<Eigen::Index> perm(d);
  for (Eigen::Index s = 0; s < d; ++s) {
    Eigen::Index r = 0;
    for (int k = 0; k < N; ++k)
      if ((s >> k) & 1) r |= Eigen::Index(1) << (N - 1 - k);
    perm[s] = r;
  }
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(perm[i], perm[j]) = m(i, j);
  return out;
}

}  // namespace xxz

#include "xxz/boundary.hpp"

namespace xxz {

namespace {

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

const Matrix& id2() {
  static const Matrix i = Matrix::Identity(2, 2);
  return i;
}

// tr(P- X) with P- = (1 - P)/2
Complex antisym_trace(const Matrix& x) {
  const Matrix pm = 0.5 * (Matrix::Identity(4, 4) - flip_matrix());
  return (pm * x).trace();
}

}  // namespace

KMatrixPair::KMatrixPair(Complex q, BoundaryParams bp) : bf_(q, std::move(bp)) {}

Matrix KMatrixPair::minus(Complex u) const {
  const BoundaryParams& p = bf_.params();
  const Complex cu = Scalars::c(u);
  Matrix k(2, 2);
  k << bf_.k_minus(u), p.tau * p.tau * cu, p.tau_tilde * p.tau_tilde * cu, bf_.k_minus(1.0 / u);
  return k;
}

Matrix KMatrixPair::plus(Complex u) const {
  const BoundaryParams& p = bf_.params();
  const Complex q = scalars().q();
  const Complex cqu = Scalars::c(q * u);
  Matrix k(2, 2);
  k << bf_.k_plus(q * u), p.kappa_tilde * p.kappa_tilde * cqu, p.kappa * p.kappa * cqu, bf_.k_plus(1.0 / (q * u));
  return k;
}

double KMatrixPair::check_reflection(Complex u1, Complex u2) const {
  const Matrix r1 = r_matrix(u1 / u2, scalars());
  const Matrix r2 = r_matrix(u1 * u2, scalars());
  const Matrix ka = kron2(minus(u1), id2());
  const Matrix kb = kron2(id2(), minus(u2));
  return relative_residual(r1 * ka * r2 * kb, kb * r2 * ka * r1);
}

double KMatrixPair::check_dual_reflection(Complex u1, Complex u2) const {
  const Complex q = scalars().q();
  const Matrix r1 = r_matrix(u2 / u1, scalars());
  const Matrix r2 = r_matrix(1.0 / (q * q * u1 * u2), scalars());
  const Matrix ka = kron2(plus(u1), id2());
  const Matrix kb = kron2(id2(), plus(u2));
  return relative_residual(r1 * ka * r2 * kb, kb * r2 * ka * r1);
}

QDeterminant KMatrixPair::q_det_minus(Complex u) const {
  const Scalars& s = scalars();
  const Complex q = s.q();
  const Matrix k1 = kron2(minus(u), id2());
  const Matrix k2 = kron2(id2(), minus(q * u));
  QDeterminant d;
  d.value = antisym_trace(k1 * r_matrix(q * u * u, s) * k2);
  d.factorized = s.b(u * u) * bf_.k_tilde_minus(q * u) * bf_.k_tilde_minus(1.0 / (q * u));
  d.residual = relative_residual(d.value, d.factorized);
  return d;
}

QDeterminant KMatrixPair::q_det_plus(Complex u) const {
  const Scalars& s = scalars();
  const Complex q = s.q();
  const Matrix k1 = kron2(plus(u), id2());
  const Matrix k2 = kron2(id2(), plus(q * u));
  QDeterminant d;
  d.value = antisym_trace(k2 * r_matrix(1.0 / (q * q * q * u * u), s) * k1);
  d.factorized = s.b(1.0 / (q * q * q * q * u * u)) * bf_.k_tilde_plus(q * u) * bf_.k_tilde_plus(1.0 / (q * u));
  d.residual = relative_residual(d.value, d.factorized);
  return d;
}

HamiltonianCouplings hamiltonian_couplings(const BoundaryParams& bp, Complex q) {
  const Complex qd = q - 1.0 / q;
  const Complex eps_sum = bp.eps_plus + bp.eps_minus;
  const Complex nu_sum = bp.nu_plus + bp.nu_minus;
  if (std::abs(eps_sum) < kGenericEps) throw SingularPoint("eps_plus + eps_minus vanishes");
  if (std::abs(nu_sum) < kGenericEps) throw SingularPoint("nu_plus + nu_minus vanishes");
  HamiltonianCouplings h;
  h.epsilon = 0.5 * qd * (bp.eps_plus - bp.eps_minus) / eps_sum;
  h.kappa_minus = 2.0 * qd * bp.kappa * bp.kappa / eps_sum;
  h.kappa_plus = 2.0 * qd * bp.kappa_tilde * bp.kappa_tilde / eps_sum;
  h.nu = 0.5 * qd * (bp.nu_minus - bp.nu_plus) / nu_sum;
  h.tau_minus = 2.0 * qd * bp.tau_tilde * bp.tau_tilde / nu_sum;
  h.tau_plus = 2.0 * qd * bp.tau * bp.tau / nu_sum;
  h.delta = 0.5 * (q + 1.0 / q);
  return h;
}

}  // namespace xxz

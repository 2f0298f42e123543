#pragma once

#include "xxz/lattice.hpp"
#include "xxz/scalars.hpp"

namespace xxz {

struct QDeterminant {
  Complex value;       // tr12(P- ...) as a trace
  Complex factorized;  // product of k~ functions
  double residual;
};

// The two reflection matrices of a boundary parameter set.
class KMatrixPair {
 public:
  KMatrixPair(Complex q, BoundaryParams bp);

  Matrix minus(Complex u) const;
  Matrix plus(Complex u) const;

  const BoundaryFunctions& functions() const { return bf_; }
  const Scalars& scalars() const { return bf_.scalars(); }
  const BoundaryParams& params() const { return bf_.params(); }

  double check_reflection(Complex u1, Complex u2) const;
  double check_dual_reflection(Complex u1, Complex u2) const;

  QDeterminant q_det_minus(Complex u) const;
  QDeterminant q_det_plus(Complex u) const;

 private:
  BoundaryFunctions bf_;
};

struct HamiltonianCouplings {
  Complex epsilon, kappa_minus, kappa_plus;
  Complex nu, tau_minus, tau_plus;
  Complex delta;
};

// Throws SingularPoint when eps+ + eps- or nu+ + nu- vanishes.
HamiltonianCouplings hamiltonian_couplings(const BoundaryParams& bp, Complex q);

}  // namespace xxz

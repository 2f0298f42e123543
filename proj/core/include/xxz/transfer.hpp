#pragma once

#include <array>
#include <string_view>

#include "xxz/boundary.hpp"
#include "xxz/lattice.hpp"

namespace xxz {

// Auxiliary-space blocks of the double-row monodromy, as operators on the chain.
struct MonodromyBlocks {
  Complex u;
  Matrix K11, K12, K21, K22;
};

// A(u), B(u), C(u), D(u) and the hatted pair; B and C are shared.
struct OperatorFamily {
  Matrix A, B, C, D, A_hat, D_hat;
};

enum class Relation { AB, CA, DB, CD, CB, AD, AA, DD, BB, CC, AhatC, DhatC };
inline constexpr std::array<Relation, 12> kAllRelations = {Relation::AB, Relation::CA, Relation::DB, Relation::CD,
                                                           Relation::CB, Relation::AD, Relation::AA, Relation::DD,
                                                           Relation::BB, Relation::CC, Relation::AhatC, Relation::DhatC};
std::string_view to_string(Relation r);  // "AB", "CA", ...

class DerivativeUnstable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TransferHamiltonian {
  Matrix H;
  double commutator_norm;        // ||[t(1), t'(1)]|| / (||t(1)|| ||t'(1)||)
  double richardson_gap;         // relative change of t'(1) under step halving
  double t1_identity_deviation;  // distance of t(1) from a multiple of the identity, relative
};

class OpenChain {
 public:
  OpenChain(ModelParams model, BoundaryParams bp);

  int N() const { return model_.N(); }
  const ModelParams& model() const { return model_; }
  const BoundaryParams& boundary() const { return k_.params(); }
  const Scalars& scalars() const { return k_.scalars(); }
  const BoundaryFunctions& functions() const { return k_.functions(); }
  const KMatrixPair& k_matrices() const { return k_; }

  // R_a1(u/v1)...R_aN(u/vN) K-_a(u) R_aN(u vN)...R_a1(u v1) on aux + sites
  QuantumOperator double_row_monodromy(Complex u) const;
  MonodromyBlocks blocks(Complex u) const;
  OperatorFamily family(Complex u) const;
  OperatorFamily family(const MonodromyBlocks& k) const;

  Matrix transfer_matrix(Complex u) const;  // tr_a K+_a K_a
  Matrix transfer_expanded(Complex u) const;
  Matrix transfer_hatted(Complex u) const;

  double check_commutation(Relation r, Complex u, Complex v) const;

  Matrix hamiltonian_direct() const;
  // Requires the homogeneous point v_i = 1.
  TransferHamiltonian hamiltonian_from_transfer(double h = 1e-3) const;

 private:
  ModelParams model_;
  KMatrixPair k_;
};

// H of the open chain built from Pauli terms with the given couplings.
Matrix hamiltonian_from_couplings(int N, const HamiltonianCouplings& c);

// Reverses the site order of an operator on N sites.
Matrix reverse_sites(const Matrix& m, int N);

}  // namespace xxz

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "xxz/scalars.hpp"

namespace xxz {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Space {
  enum class Kind { Aux, Site };
  Kind kind = Kind::Site;
  int index = 1;

  bool operator==(const Space&) const = default;
  std::string label() const;
};

inline Space aux_space(int i = 0) { return {Space::Kind::Aux, i}; }
inline Space site_space(int i) { return {Space::Kind::Site, i}; }

// Ordered labels; the first label is the most significant bit of the basis index.
using Layout = std::vector<Space>;

// n_aux auxiliary spaces followed by sites 1..N
Layout chain_layout(int N, int n_aux = 0);

class LayoutMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Frobenius-norm relative residual.
template <class A, class B>
double relative_residual(const Eigen::MatrixBase<A>& lhs, const Eigen::MatrixBase<B>& rhs) {
  const double a = lhs.norm(), b = rhs.norm();
  return (lhs - rhs).norm() / (1.0 + std::max(a, b));
}

class QuantumOperator {
 public:
  QuantumOperator() = default;
  QuantumOperator(Layout layout, Matrix m);

  static QuantumOperator identity(const Layout& layout);

  const Layout& layout() const { return layout_; }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  // position of `s` in the layout; throws LayoutMismatch if absent
  int position(const Space& s) const;
  bool contains(const Space& s) const;

  // Same operator on a larger layout that contains all of this one's spaces.
  QuantumOperator embed(const Layout& target) const;
  QuantumOperator partial_trace(const Space& s) const;
  // <row| op |col> in space s, as an operator on the remaining spaces
  QuantumOperator block(const Space& s, int row, int col) const;

  QuantumOperator& operator+=(const QuantumOperator& o);
  QuantumOperator& operator-=(const QuantumOperator& o);
  QuantumOperator& operator*=(Complex z);

 private:
  Layout layout_;
  Matrix m_;
};

QuantumOperator operator*(const QuantumOperator& a, const QuantumOperator& b);
QuantumOperator operator+(QuantumOperator a, const QuantumOperator& b);
QuantumOperator operator-(QuantumOperator a, const QuantumOperator& b);
QuantumOperator operator*(Complex z, QuantumOperator a);
Vector operator*(const QuantumOperator& a, const Vector& v);

// Layouts must be disjoint; result layout is a's followed by b's.
QuantumOperator tensor(const QuantumOperator& a, const QuantumOperator& b);

// In-place m <- G m and m <- m G for a gate on the given bit positions of an
// n-space register (one position for 2x2 gates, two for 4x4 gates).
void apply_gate_left(Matrix& m, int n_spaces, const Matrix& gate, const std::vector<int>& positions);
void apply_gate_right(Matrix& m, int n_spaces, const Matrix& gate, const std::vector<int>& positions);

enum class Pauli { X, Y, Z, Plus, Minus };
Matrix pauli(Pauli which);
// 1 <= i <= N
QuantumOperator pauli_on_site(Pauli which, int i, int N);

Matrix flip_matrix();
Matrix r_matrix(Complex u, const Scalars& s);
QuantumOperator r_operator(Complex u, const Scalars& s, Space a, Space b);

// Residual of R12(ua/ub) R13(ua/uc) R23(ub/uc) = R23 R13 R12.
double ybe_residual(const Scalars& s, Complex ua, Complex ub, Complex uc);

}  // namespace xxz

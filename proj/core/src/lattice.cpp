#include "xxz/lattice.hpp"

#include <algorithm>

namespace xxz {

std::string Space::label() const {
  return (kind == Kind::Aux ? "a" : "s") + std::to_string(index);
}

Layout chain_layout(int N, int n_aux) {
  Layout l;
  for (int a = 0; a < n_aux; ++a) l.push_back(aux_space(a));
  for (int i = 1; i <= N; ++i) l.push_back(site_space(i));
  return l;
}

QuantumOperator::QuantumOperator(Layout layout, Matrix m) : layout_(std::move(layout)), m_(std::move(m)) {
  const Eigen::Index d = Eigen::Index(1) << layout_.size();
  if (m_.rows() != d || m_.cols() != d)
    throw LayoutMismatch("matrix of size " + std::to_string(m_.rows()) + " does not fit " +
                         std::to_string(layout_.size()) + " spaces");
  for (size_t i = 0; i < layout_.size(); ++i)
    for (size_t j = i + 1; j < layout_.size(); ++j)
      if (layout_[i] == layout_[j]) throw LayoutMismatch("repeated space " + layout_[i].label());
}

QuantumOperator QuantumOperator::identity(const Layout& layout) {
  const Eigen::Index d = Eigen::Index(1) << layout.size();
  return QuantumOperator(layout, Matrix::Identity(d, d));
}

int QuantumOperator::position(const Space& s) const {
  auto it = std::find(layout_.begin(), layout_.end(), s);
  if (it == layout_.end()) throw LayoutMismatch("space " + s.label() + " not in layout");
  return static_cast<int>(it - layout_.begin());
}

bool QuantumOperator::contains(const Space& s) const {
  return std::find(layout_.begin(), layout_.end(), s) != layout_.end();
}

namespace {

// bit shift of layout position p in an n-space register
inline int shift_of(int p, int n) { return n - 1 - p; }

}  // namespace

QuantumOperator QuantumOperator::embed(const Layout& target) const {
  const int n = static_cast<int>(target.size());
  const int k = static_cast<int>(layout_.size());
  std::vector<int> shifts(k);
  for (int j = 0; j < k; ++j) {
    auto it = std::find(target.begin(), target.end(), layout_[j]);
    if (it == target.end()) throw LayoutMismatch("cannot embed: " + layout_[j].label() + " missing in target");
    shifts[j] = shift_of(static_cast<int>(it - target.begin()), n);
  }
  long mask = 0;
  for (int s : shifts) mask |= 1L << s;
  const long D = 1L << n, d = 1L << k;
  // sub-index <-> full-index scatter table
  std::vector<long> scatter(d);
  for (long a = 0; a < d; ++a) {
    long full = 0;
    for (int j = 0; j < k; ++j)
      if ((a >> (k - 1 - j)) & 1) full |= 1L << shifts[j];
    scatter[a] = full;
  }
  std::vector<long> gather(D);
  for (long a = 0; a < d; ++a) gather[scatter[a]] = a;

  Matrix out = Matrix::Zero(D, D);
  for (long c = 0; c < D; ++c) {
    const long rest = c & ~mask;
    const long cs = gather[c & mask];
    for (long a = 0; a < d; ++a) out(rest | scatter[a], c) = m_(a, cs);
  }
  return QuantumOperator(target, std::move(out));
}

QuantumOperator QuantumOperator::partial_trace(const Space& s) const {
  return block(s, 0, 0) + block(s, 1, 1);
}

QuantumOperator QuantumOperator::block(const Space& s, int row, int col) const {
  const int n = static_cast<int>(layout_.size());
  const int p = position(s);
  const int sh = shift_of(p, n);
  Layout rest = layout_;
  rest.erase(rest.begin() + p);
  const long d = 1L << (n - 1);
  auto insert = [&](long r, int bit) {
    const long hi = (r >> sh) << (sh + 1);
    const long lo = r & ((1L << sh) - 1);
    return hi | (long(bit) << sh) | lo;
  };
  Matrix out(d, d);
  for (long c = 0; c < d; ++c) {
    const long cc = insert(c, col);
    for (long r = 0; r < d; ++r) out(r, c) = m_(insert(r, row), cc);
  }
  return QuantumOperator(std::move(rest), std::move(out));
}

QuantumOperator& QuantumOperator::operator+=(const QuantumOperator& o) {
  if (o.layout_ != layout_) throw LayoutMismatch("sum of operators on different layouts");
  m_ += o.m_;
  return *this;
}

QuantumOperator& QuantumOperator::operator-=(const QuantumOperator& o) {
  if (o.layout_ != layout_) throw LayoutMismatch("difference of operators on different layouts");
  m_ -= o.m_;
  return *this;
}

QuantumOperator& QuantumOperator::operator*=(Complex z) {
  m_ *= z;
  return *this;
}

QuantumOperator operator*(const QuantumOperator& a, const QuantumOperator& b) {
  if (a.layout() != b.layout()) throw LayoutMismatch("product of operators on different layouts");
  return QuantumOperator(a.layout(), a.matrix() * b.matrix());
}

QuantumOperator operator+(QuantumOperator a, const QuantumOperator& b) { return a += b; }
QuantumOperator operator-(QuantumOperator a, const QuantumOperator& b) { return a -= b; }
QuantumOperator operator*(Complex z, QuantumOperator a) { return a *= z; }

Vector operator*(const QuantumOperator& a, const Vector& v) {
  if (v.size() != a.dim()) throw LayoutMismatch("vector dimension does not match operator");
  return a.matrix() * v;
}

QuantumOperator tensor(const QuantumOperator& a, const QuantumOperator& b) {
  Layout l = a.layout();
  for (const Space& s : b.layout()) {
    if (std::find(l.begin(), l.end(), s) != l.end()) throw LayoutMismatch("tensor of overlapping layouts");
    l.push_back(s);
  }
  const Matrix& A = a.matrix();
  const Matrix& B = b.matrix();
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return QuantumOperator(std::move(l), std::move(out));
}

namespace {

// Enumerates the 2^k basis offsets touched by a gate and the base indices
// (gate bits cleared) of an n-space register.
struct GateIndex {
  std::vector<long> offsets;
  std::vector<long> bases;
};

GateIndex gate_index(int n, const std::vector<int>& positions) {
  GateIndex gi;
  const int k = static_cast<int>(positions.size());
  long mask = 0;
  std::vector<int> shifts;
  for (int p : positions) {
    shifts.push_back(shift_of(p, n));
    mask |= 1L << shifts.back();
  }
  for (long a = 0; a < (1L << k); ++a) {
    long off = 0;
    for (int j = 0; j < k; ++j)
      if ((a >> (k - 1 - j)) & 1) off |= 1L << shifts[j];
    gi.offsets.push_back(off);
  }
  for (long b = 0; b < (1L << n); ++b)
    if (!(b & mask)) gi.bases.push_back(b);
  return gi;
}

}  // namespace

void apply_gate_left(Matrix& m, int n_spaces, const Matrix& gate, const std::vector<int>& positions) {
  const GateIndex gi = gate_index(n_spaces, positions);
  const long g = static_cast<long>(gi.offsets.size());
  if (gate.rows() != g) throw LayoutMismatch("gate size does not match its positions");
  Eigen::VectorXcd tmp(g);
  for (long base : gi.bases) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (long a = 0; a < g; ++a) tmp(a) = m(base | gi.offsets[a], c);
      for (long a = 0; a < g; ++a) {
        Complex acc = 0.0;
        for (long b = 0; b < g; ++b) acc += gate(a, b) * tmp(b);
        m(base | gi.offsets[a], c) = acc;
      }
    }
  }
}

void apply_gate_right(Matrix& m, int n_spaces, const Matrix& gate, const std::vector<int>& positions) {
  const GateIndex gi = gate_index(n_spaces, positions);
  const long g = static_cast<long>(gi.offsets.size());
  if (gate.rows() != g) throw LayoutMismatch("gate size does not match its positions");
  std::vector<Eigen::VectorXcd> cols(g);
  for (long base : gi.bases) {
    for (long a = 0; a < g; ++a) cols[a] = m.col(base | gi.offsets[a]);
    for (long b = 0; b < g; ++b) {
      Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(m.rows());
      for (long a = 0; a < g; ++a)
        if (gate(a, b) != 0.0) acc += cols[a] * gate(a, b);
      m.col(base | gi.offsets[b]) = acc;
    }
  }
}

Matrix pauli(Pauli which) {
  Matrix m = Matrix::Zero(2, 2);
  switch (which) {
    case Pauli::X: m(0, 1) = m(1, 0) = 1.0; break;
    case Pauli::Y: m(0, 1) = -kI; m(1, 0) = kI; break;
    case Pauli::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case Pauli::Plus: m(0, 1) = 1.0; break;
    case Pauli::Minus: m(1, 0) = 1.0; break;
  }
  return m;
}

QuantumOperator pauli_on_site(Pauli which, int i, int N) {
  if (i < 1 || i > N) throw std::out_of_range("site " + std::to_string(i) + " outside 1.." + std::to_string(N));
  return QuantumOperator({site_space(i)}, pauli(which)).embed(chain_layout(N));
}

Matrix flip_matrix() {
  Matrix p = Matrix::Zero(4, 4);
  p(0, 0) = p(3, 3) = p(1, 2) = p(2, 1) = 1.0;
  return p;
}

Matrix r_matrix(Complex u, const Scalars& s) {
  const Complex bu = s.b(u), bq = s.b(s.q() * u);
  Matrix r = Matrix::Zero(4, 4);
  r(0, 0) = r(3, 3) = bq;
  r(1, 1) = r(2, 2) = bu;
  r(1, 2) = r(2, 1) = 1.0;
  return r;
}

QuantumOperator r_operator(Complex u, const Scalars& s, Space a, Space b) {
  return QuantumOperator({a, b}, r_matrix(u, s));
}

double ybe_residual(const Scalars& s, Complex ua, Complex ub, Complex uc) {
  const Layout l{aux_space(0), aux_space(1), aux_space(2)};
  const QuantumOperator r12 = r_operator(ua / ub, s, l[0], l[1]).embed(l);
  const QuantumOperator r13 = r_operator(ua / uc, s, l[0], l[2]).embed(l);
  const QuantumOperator r23 = r_operator(ub / uc, s, l[1], l[2]).embed(l);
  return relative_residual((r12 * r13 * r23).matrix(), (r23 * r13 * r12).matrix());
}

}  // namespace xxz

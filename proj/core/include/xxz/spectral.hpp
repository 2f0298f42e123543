#pragma once

#include <vector>

#include "xxz/scalars.hpp"

namespace xxz {

// prod_i b(qu/v_i) b(quv_i)
Complex lambda_product(const Scalars& s, const std::vector<Complex>& v, Complex u);

// Which creation operator builds the Bethe vector: B on the highest weight
// vector, or C on the lowest one.
enum class Construction { B, C };

struct SpectralComponents {
  Complex lambda_gd, lambda_ps, lambda_g;
  Complex total() const { return lambda_gd + lambda_g; }
};

struct RootComponents {
  Complex E_gd, W, E_ps, E_g;
  Complex total() const { return E_gd + E_g; }
};

// Eigenvalue and Bethe-equation functions of a chain. The root list may be
// shorter than N (off-shell vectors with M < N); Lambda(u) always runs over all sites.
class SpectralFunctions {
 public:
  SpectralFunctions(ModelParams model, BoundaryParams bp, Construction kind = Construction::B);

  Construction kind() const { return kind_; }
  const Scalars& scalars() const { return bf_.scalars(); }
  const BoundaryFunctions& functions() const { return bf_; }
  const ModelParams& model() const { return model_; }

  Complex lambda(Complex u) const { return lambda_product(scalars(), model_.v, u); }
  // constant in front of the inhomogeneous term
  Complex coefficient() const;

  SpectralComponents at(Complex u, const std::vector<Complex>& us) const;
  RootComponents at_root(size_t i, const std::vector<Complex>& us) const;

  Complex Lambda(Complex u, const std::vector<Complex>& us) const { return at(u, us).total(); }
  Complex E(size_t i, const std::vector<Complex>& us) const { return at_root(i, us).total(); }
  // b(u_i/u) Lambda(u, us) at u = u_i (1 + eps)
  Complex E_limit(size_t i, const std::vector<Complex>& us, double eps = 1e-6) const;

  // E_i / (b(u_i^2) phi(u_i)), free of the trivial zeros at u_i^4 = 1 and q^4 u_i^4 = 1
  Complex reduced(size_t i, const std::vector<Complex>& us) const;
  // |E_i| / (|Lambda_gd(u_i)| + |Lambda_g(u_i)|) evaluated on the remaining roots
  double normalized_residual(size_t i, const std::vector<Complex>& us) const;

 private:
  // k~+ k~- and k~- at the two points that pair with u
  Complex first(Complex u) const { return kind_ == Construction::B ? u : 1.0 / u; }
  Complex second(Complex u) const { return kind_ == Construction::B ? 1.0 / (scalars().q() * u) : scalars().q() * u; }

  ModelParams model_;
  BoundaryFunctions bf_;
  Construction kind_;
};

// Triangular right boundary (tau~ = 0): k~-(x) is replaced by x k^-(x).
class TriangularSpectralFunctions {
 public:
  TriangularSpectralFunctions(ModelParams model, BoundaryParams bp);

  const Scalars& scalars() const { return bf_.scalars(); }
  Complex coefficient() const;  // i kappa kappa~ (nu_- q^{-N-1} xi~/xi + i kappa tau^2 / kappa~)

  Complex Lambda_d(Complex u, const std::vector<Complex>& us) const;
  Complex E_d(size_t i, const std::vector<Complex>& us) const;
  Complex Lambda_gup(Complex u, const std::vector<Complex>& us) const;
  Complex E_gup(size_t i, const std::vector<Complex>& us) const;
  Complex Lambda_up(Complex u, const std::vector<Complex>& us) const { return Lambda_d(u, us) + Lambda_gup(u, us); }
  Complex E_up(size_t i, const std::vector<Complex>& us) const { return E_d(i, us) + E_gup(i, us); }

 private:
  Complex xk(Complex x) const { return x * bf_.k_minus(x); }

  ModelParams model_;
  BoundaryFunctions bf_;
};

}  // namespace xxz

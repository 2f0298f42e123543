#pragma once

#include <string>
#include <vector>

#include "xxz/gauge.hpp"
#include "xxz/spectral.hpp"

namespace xxz {

// Gauge parameters that make the reference states and Bethe vectors work.
Complex alpha_hw(const BoundaryParams& bp, Complex q, int N, int m0);
Complex beta_lw(const BoundaryParams& bp, Complex q, int N, int m0);
Complex beta_tl(const BoundaryParams& bp, Complex q, int m0, int M);
Complex alpha_tu(const BoundaryParams& bp, Complex q, int N, int m0, int M_hat);
Complex alpha_d(const BoundaryParams& bp, Complex q, int m0, int M);
Complex beta_d(const BoundaryParams& bp, Complex q, int m0, int M);

class ActionCheckFailed : public std::runtime_error {
 public:
  ActionCheckFailed(const std::string& identity, double residual)
      : std::runtime_error("weight vector action check failed: " + identity + " residual " + std::to_string(residual)),
        identity_(identity),
        residual_(residual) {}
  const std::string& identity() const { return identity_; }
  double residual() const { return residual_; }

 private:
  std::string identity_;
  double residual_;
};

enum class WeightKind { Highest, Lowest, Diagonal };

struct WeightVector {
  Vector vector;
  WeightKind kind;
  int m0;
  GaugeFrame frame;
};

// residuals of the three action identities of a weight vector at u
struct WeightActions {
  double diag_first;   // A (highest) or A-hat (lowest)
  double diag_second;  // D or D-hat
  double annihilated;  // ||C|Omega>|| or ||B|Omega-hat>||, relative to ||Omega||
};

// tensor product of X(v_i, m0 + i)
Vector highest_weight_state(const GaugeVectors& gv, const std::vector<Complex>& v, int m0);
// tensor product of Y(v_i, m0 + 2N - i)
Vector lowest_weight_state(const GaugeVectors& gv, const std::vector<Complex>& v, int m0);
// all spins up
Vector diagonal_state(int N);

WeightActions highest_weight_actions(const DynamicalChain& dc, const Vector& omega, int m0, Complex u);
WeightActions lowest_weight_actions(const DynamicalChain& dc, const Vector& omega_hat, int m0, Complex u);

// Builds the vector in the chain's frame and checks its action identities at a
// few fixed probe points. The frame's alpha (beta) must equal alpha_hw (beta_lw).
WeightVector highest_weight_vector(const DynamicalChain& dc, int m0, double tol = 1e-10);
WeightVector lowest_weight_vector(const DynamicalChain& dc, int m0, double tol = 1e-10);

// ||string of N+1 operators|| / prod ||single operators||, frame alpha_hw, beta_lw
double nilpotency_B(const DynamicalChain& dc, const std::vector<Complex>& us, int m0);
double nilpotency_C(const DynamicalChain& dc, const std::vector<Complex>& us, int m0);

// ||v1 - v2|| / (1 + max(||v1||, ||v2||))
double vector_residual(const Vector& a, const Vector& b);

// M-root Bethe vectors built with B on the highest weight vector, in the frame
// alpha_hw, beta_tl(M).
class BetheSystem {
 public:
  BetheSystem(const OpenChain& chain, int m0, int M);

  int m0() const { return m0_; }
  int M() const { return M_; }
  int m() const { return m0_ + 2 * M_; }
  const DynamicalChain& dynamical() const { return dyn_; }
  const SpectralFunctions& spectral() const { return spec_; }
  const Vector& reference() const { return omega_; }

  Vector vector(const std::vector<Complex>& us) const;

  double td_residual(Complex u, const std::vector<Complex>& us) const;
  double tps_residual(Complex u, const std::vector<Complex>& us) const;
  double tlow_residual(Complex u, const std::vector<Complex>& us) const;
  // M = N only
  double conjecture_residual(Complex u, const std::vector<Complex>& us) const;
  double full_residual(Complex u, const std::vector<Complex>& us) const;

  // norm of the terms of the tlow action beyond the standard ones (zeta B, delta and chi terms), relative to ||t(u) Psi||
  double extra_terms_norm(Complex u, const std::vector<Complex>& us) const;

 private:
  Vector apply_B(Complex u, int m, const Vector& x) const;

  int m0_, M_;
  DynamicalChain dyn_;
  SpectralFunctions spec_;
  Vector omega_;
};

// M_hat-root vectors built with C on the lowest weight vector, frame beta_lw, alpha_tu(M_hat).
class DualBetheSystem {
 public:
  DualBetheSystem(const OpenChain& chain, int m0, int M_hat);

  int m0() const { return m0_; }
  int M() const { return M_; }
  int m() const { return m0_ + 2 * (dyn_.chain().N() - M_); }
  const DynamicalChain& dynamical() const { return dyn_; }
  const SpectralFunctions& spectral() const { return spec_; }
  const Vector& reference() const { return omega_; }

  Vector vector(const std::vector<Complex>& us) const;

  double offshell_residual(Complex u, const std::vector<Complex>& us) const;
  // M_hat = N only
  double conjecture_residual(Complex u, const std::vector<Complex>& us) const;
  double full_residual(Complex u, const std::vector<Complex>& us) const;
  double extra_terms_norm(Complex u, const std::vector<Complex>& us) const;

 private:
  int m0_, M_;
  DynamicalChain dyn_;
  SpectralFunctions spec_;
  Vector omega_;
};

}  // namespace xxz

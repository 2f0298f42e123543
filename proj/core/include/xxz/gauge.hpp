#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "xxz/transfer.hpp"

namespace xxz {

using Vec2 = Eigen::Vector2cd;
using Row2 = Eigen::RowVector2cd;

class GaugeVectors {
 public:
  GaugeVectors(Complex q, GaugeFrame frame) : q_(q), frame_(frame) {}

  Vec2 X(Complex u, int m) const;
  Vec2 Y(Complex u, int m) const;
  Row2 X_tilde(Complex u, int m) const;
  Row2 Y_tilde(Complex u, int m) const;

  Complex gamma(Complex u, int m) const { return xxz::gamma(u, m, frame_, q_); }
  Complex gamma_m(int m) const { return xxz::gamma_m(m, frame_, q_); }
  const GaugeFrame& frame() const { return frame_; }
  Complex q() const { return q_; }

 private:
  Complex q_;
  GaugeFrame frame_;
};

struct GaugeVectorResiduals {
  std::array<double, 4> scalar_products;  // X~X, Y~Y, X~(m+1)Y(m-1) - 1, Y~(m-1)X(m+1) - 1
  double closure;
  std::array<double, 8> intertwining;     // R on XX, YY, XY, YX, then the same for the dual vectors
};
GaugeVectorResiduals check_gauge_vectors(const GaugeVectors& gv, Complex u, Complex v, int m);

struct DynamicalFamily {
  Matrix A, B, C, D, A_hat, D_hat;
};

enum class DynRelation { BdBd, AdBd, DdBd, CdCd, hAdCd, hDdCd };
inline constexpr std::array<DynRelation, 6> kAllDynRelations = {DynRelation::BdBd, DynRelation::AdBd,
                                                                DynRelation::DdBd, DynRelation::CdCd,
                                                                DynRelation::hAdCd, DynRelation::hDdCd};
std::string_view to_string(DynRelation r);  // "dyn-BB", ...

struct Decomposition {
  Matrix t_d, t_ps;
  double residual;  // against the transfer matrix
};

struct BStringActions {
  double A, D, td, tps;
};
struct CStringActions {
  double td_hat, tps_hat;
};

// Dynamical operators of an open chain in a fixed gauge frame.
class DynamicalChain {
 public:
  DynamicalChain(OpenChain chain, GaugeFrame frame);

  const OpenChain& chain() const { return chain_; }
  const GaugeVectors& vectors() const { return gv_; }
  const DynamicalCoefficients& coefficients() const { return dc_; }
  const GaugeFrame& frame() const { return gv_.frame(); }
  const Scalars& scalars() const { return chain_.scalars(); }

  DynamicalFamily family(Complex u, int m) const;
  DynamicalFamily family(const MonodromyBlocks& k, int m) const;
  // A, B, C, D rebuilt from the non-dynamical family by the explicit expansion
  DynamicalFamily expansion(const MonodromyBlocks& k, int m) const;
  // max relative gap between sandwich and expansion over A, B, C, D
  double expansion_residual(Complex u, int m) const;

  Decomposition decompose(Complex u, int m) const;
  Decomposition decompose_hat(Complex u, int m) const;

  // B(u1, m-2) ... B(uM, m-2M) and C(u1, m+2) ... C(uM, m+2M)
  Matrix string_B(const std::vector<Complex>& us, int m) const;
  Matrix string_C(const std::vector<Complex>& us, int m) const;

  double check_dynamical(DynRelation r, Complex u, Complex v, int m) const;
  BStringActions act_on_B_string(Complex u, const std::vector<Complex>& us, int m) const;
  CStringActions act_on_C_string(Complex u, const std::vector<Complex>& us, int m) const;

 private:
  OpenChain chain_;
  GaugeVectors gv_;
  DynamicalCoefficients dc_;
};

struct SummationResiduals {
  double first, second;
};
SummationResiduals summation_identities(const DynamicalCoefficients& dc, Complex u, const std::vector<Complex>& us,
                                        int m);

// us with entry i replaced by u / removed
std::vector<Complex> replace_at(std::vector<Complex> us, size_t i, Complex u);
std::vector<Complex> remove_at(std::vector<Complex> us, size_t i);

}  // namespace xxz

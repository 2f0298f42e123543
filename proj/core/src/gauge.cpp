#include "xxz/gauge.hpp"

namespace xxz {

Vec2 GaugeVectors::X(Complex u, int m) const { return Vec2(frame_.alpha * ipow(q_, -m) / u, 1.0); }

Vec2 GaugeVectors::Y(Complex u, int m) const { return Vec2(frame_.beta * ipow(q_, m) / u, 1.0); }

Row2 GaugeVectors::X_tilde(Complex u, int m) const {
  const Complex pre = q_ * u / guard(gamma_m(m - 1), "gamma_{m-1} in X~");
  return pre * Row2(-1.0, frame_.alpha * ipow(q_, -m) / u);
}

Row2 GaugeVectors::Y_tilde(Complex u, int m) const {
  const Complex pre = q_ * u / guard(gamma_m(m + 1), "gamma_{m+1} in Y~");
  return pre * Row2(1.0, -frame_.beta * ipow(q_, m) / u);
}

namespace {

Eigen::Vector4cd kron(const Vec2& a, const Vec2& b) { return Eigen::Vector4cd(a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1)); }

Eigen::RowVector4cd kron(const Row2& a, const Row2& b) {
  return Eigen::RowVector4cd(a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1));
}

}  // namespace

GaugeVectorResiduals check_gauge_vectors(const GaugeVectors& gv, Complex u, Complex v, int m) {
  GaugeVectorResiduals out{};
  out.scalar_products[0] = relative_residual(Complex(gv.X_tilde(u, m) * gv.X(u, m)), 0.0);
  out.scalar_products[1] = relative_residual(Complex(gv.Y_tilde(u, m) * gv.Y(u, m)), 0.0);
  out.scalar_products[2] = relative_residual(Complex(gv.X_tilde(u, m + 1) * gv.Y(u, m - 1)), 1.0);
  out.scalar_products[3] = relative_residual(Complex(gv.Y_tilde(u, m - 1) * gv.X(u, m + 1)), 1.0);
  const Matrix close = gv.Y(u, m - 1) * gv.X_tilde(u, m + 1) + gv.X(u, m + 1) * gv.Y_tilde(u, m - 1);
  out.closure = relative_residual(close, Matrix::Identity(2, 2));

  const Scalars s(gv.q());
  const Complex q = gv.q();
  const Eigen::Matrix4cd R = r_matrix(u / v, s);
  const Complex bq = s.b(q * u / v), b = s.b(u / v);
  auto g = [&](int k) { return guard(gv.gamma_m(k), "gamma_m in intertwining"); };
  auto X = [&](Complex z, int k) { return gv.X(z, k); };
  auto Y = [&](Complex z, int k) { return gv.Y(z, k); };
  auto Xt = [&](Complex z, int k) { return gv.X_tilde(z, k); };
  auto Yt = [&](Complex z, int k) { return gv.Y_tilde(z, k); };

  out.intertwining[0] = relative_residual(R * kron(X(u, m + 1), X(v, m)), bq * kron(X(u, m), X(v, m + 1)));
  out.intertwining[1] = relative_residual(R * kron(Y(u, m), Y(v, m + 1)), bq * kron(Y(u, m + 1), Y(v, m)));
  out.intertwining[2] = relative_residual(
      R * kron(X(u, m + 1), Y(v, m)),
      b * g(m) / g(m + 1) * kron(X(u, m + 2), Y(v, m + 1)) + gv.gamma(v / u, m + 1) / g(m + 1) * kron(Y(u, m), X(v, m + 1)));
  out.intertwining[3] = relative_residual(
      R * kron(Y(u, m), X(v, m + 1)),
      b * g(m + 1) / g(m) * kron(Y(u, m - 1), X(v, m)) + gv.gamma(u / v, m) / g(m) * kron(X(u, m + 1), Y(v, m)));
  out.intertwining[4] = relative_residual(kron(Xt(u, m + 1), Xt(v, m)) * R, bq * kron(Xt(u, m), Xt(v, m + 1)));
  out.intertwining[5] = relative_residual(kron(Yt(u, m), Yt(v, m + 1)) * R, bq * kron(Yt(u, m + 1), Yt(v, m)));
  out.intertwining[6] = relative_residual(kron(Xt(u, m + 1), Yt(v, m - 2)) * R,
                                          b * g(m + 1) / g(m) * kron(Xt(u, m + 2), Yt(v, m - 1)) +
                                              gv.gamma(v / u, m) / g(m) * kron(Yt(u, m - 2), Xt(v, m + 1)));
  out.intertwining[7] = relative_residual(kron(Yt(u, m - 1), Xt(v, m + 2)) * R,
                                          b * g(m - 1) / g(m) * kron(Yt(u, m - 2), Xt(v, m + 1)) +
                                              gv.gamma(u / v, m) / g(m) * kron(Xt(u, m + 2), Yt(v, m - 1)));
  return out;
}

std::string_view to_string(DynRelation r) {
  static constexpr std::array<std::string_view, 6> names = {"dyn-BB", "dyn-AB", "dyn-DB",
                                                            "dyn-CC", "dyn-AhatC", "dyn-DhatC"};
  return names[static_cast<size_t>(r)];
}

std::vector<Complex> replace_at(std::vector<Complex> us, size_t i, Complex u) {
  us.at(i) = u;
  return us;
}

std::vector<Complex> remove_at(std::vector<Complex> us, size_t i) {
  us.erase(us.begin() + static_cast<std::ptrdiff_t>(i));
  return us;
}

DynamicalChain::DynamicalChain(OpenChain chain, GaugeFrame frame)
    : chain_(std::move(chain)), gv_(chain_.scalars().q(), frame), dc_(chain_.scalars().q(), chain_.boundary(), frame) {}

namespace {

Matrix sandwich(const Row2& row, const MonodromyBlocks& k, const Vec2& col) {
  return row(0) * (col(0) * k.K11 + col(1) * k.K12) + row(1) * (col(0) * k.K21 + col(1) * k.K22);
}

}  // namespace

DynamicalFamily DynamicalChain::family(Complex u, int m) const { return family(chain_.blocks(u), m); }

DynamicalFamily DynamicalChain::family(const MonodromyBlocks& k, int m) const {
  const Complex u = k.u;
  const Scalars& s = scalars();
  const Complex bq = guard(s.b(s.q() * u * u), "b(q u^2) in the dynamical family");
  const Complex gm = guard(gv_.gamma_m(m), "gamma_m in the dynamical family");
  DynamicalFamily f;
  f.C = sandwich(gv_.X_tilde(u, m), k, gv_.X(1.0 / u, m));
  f.B = sandwich(gv_.Y_tilde(u, m), k, gv_.Y(1.0 / u, m));
  f.A = sandwich(gv_.Y_tilde(u, m - 2), k, gv_.X(1.0 / u, m));
  f.D_hat = sandwich(gv_.X_tilde(u, m + 2), k, gv_.Y(1.0 / u, m));
  f.A_hat = gv_.gamma_m(m - 1) / gm * f.A - gv_.gamma(u * u, m - 1) / (bq * gm) * f.D_hat;
  f.D = gv_.gamma_m(m + 1) / gm * f.D_hat - gv_.gamma(1.0 / (u * u), m + 1) / (bq * gm) * f.A;
  return f;
}

DynamicalFamily DynamicalChain::expansion(const MonodromyBlocks& k, int m) const {
  const OperatorFamily F = chain_.family(k);
  const Scalars& s = scalars();
  const Complex q = s.q(), u = k.u;
  const Complex al = frame().alpha, be = frame().beta;
  const Complex bq = s.b(q * u * u);
  const Complex pu = s.phi(u), pqu = s.phi(1.0 / (q * u));
  const Complex gp = guard(gv_.gamma_m(m + 1), "gamma_{m+1}"), gmm = guard(gv_.gamma_m(m - 1), "gamma_{m-1}");
  const Complex qmb = ipow(q, m) * be;
  DynamicalFamily f;
  f.B = q * u / gp * (F.B + qmb * (q * u * pqu * F.A - F.D / u) - qmb * qmb * F.C);
  f.A = q * u / gmm *
        (F.B + (u * ipow(q, -m) * al - ipow(q, m - 2) * be / (u * bq)) * F.A - ipow(q, m - 2) * be / u * F.D -
         al * be / (q * q) * F.C);
  f.D = q * u / gmm *
        ((ipow(q, -m - 1) * al / u + ipow(q, m - 1) * be * u / bq) * F.D - ipow(q, m - 1) * be * u * pu * pqu * F.A -
         pu * (F.B - al * be / (q * q) * F.C));
  f.C = q * u / gmm *
        (ipow(q, -2 * m) * al * al * F.C - ipow(q, -m) * al * (q * u * pqu * F.A - F.D / u) - F.B);
  const Complex gm = guard(gv_.gamma_m(m), "gamma_m");
  // hatted pair recovered from A and D by inverting the linear relations
  const Complex a11 = gv_.gamma_m(m + 1) / gm, a12 = -gv_.gamma(1.0 / (u * u), m + 1) / (bq * gm);
  // D = a11 D_hat + a12 A  ->  D_hat = (D - a12 A) / a11
  f.D_hat = (f.D - a12 * f.A) / guard(a11, "gamma ratio");
  f.A_hat = gv_.gamma_m(m - 1) / gm * f.A - gv_.gamma(u * u, m - 1) / (bq * gm) * f.D_hat;
  return f;
}

double DynamicalChain::expansion_residual(Complex u, int m) const {
  const MonodromyBlocks k = chain_.blocks(u);
  const DynamicalFamily a = family(k, m);
  const DynamicalFamily b = expansion(k, m);
  return std::max({relative_residual(a.A, b.A), relative_residual(a.B, b.B), relative_residual(a.C, b.C),
                   relative_residual(a.D, b.D)});
}

Decomposition DynamicalChain::decompose(Complex u, int m) const {
  const Scalars& s = scalars();
  const BoundaryFunctions& bf = chain_.functions();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const Complex z = dc_.zeta(m), zt = dc_.zeta_tilde(m), d = dc_.delta(m);
  const MonodromyBlocks k = chain_.blocks(u);
  const DynamicalFamily f = family(k, m);
  Decomposition out;
  out.t_d = bf.a_tilde(u) * f.A + bf.d_tilde(u) * f.D;
  out.t_ps = s.phi(1.0 / (q * u)) * f.A - f.D;
  const Matrix rebuilt = out.t_d + cu * (z * f.B - zt * f.C - d * out.t_ps);
  out.residual = relative_residual(chain_.transfer_matrix(u), rebuilt);
  return out;
}

Decomposition DynamicalChain::decompose_hat(Complex u, int m) const {
  const Scalars& s = scalars();
  const BoundaryFunctions& bf = chain_.functions();
  const Complex q = s.q();
  const Complex cu = Scalars::c(q * u) / u;
  const Complex z = dc_.zeta(m), zt = dc_.zeta_tilde(m), d = dc_.delta(m - 2);
  const DynamicalFamily f = family(u, m);
  Decomposition out;
  out.t_d = bf.a_hat(u) * f.A_hat + bf.d_hat(u) * f.D_hat;
  out.t_ps = -f.A_hat + s.phi(1.0 / (q * u)) * f.D_hat;
  const Matrix rebuilt = out.t_d + cu * (z * f.B - zt * f.C + d * out.t_ps);
  out.residual = relative_residual(chain_.transfer_matrix(u), rebuilt);
  return out;
}

Matrix DynamicalChain::string_B(const std::vector<Complex>& us, int m) const {
  const Eigen::Index d = Eigen::Index(1) << chain_.N();
  Matrix out = Matrix::Identity(d, d);
  for (size_t j = 0; j < us.size(); ++j) out = out * family(us[j], m - 2 * int(j + 1)).B;
  return out;
}

Matrix DynamicalChain::string_C(const std::vector<Complex>& us, int m) const {
  const Eigen::Index d = Eigen::Index(1) << chain_.N();
  Matrix out = Matrix::Identity(d, d);
  for (size_t j = 0; j < us.size(); ++j) out = out * family(us[j], m + 2 * int(j + 1)).C;
  return out;
}

double DynamicalChain::check_dynamical(DynRelation r, Complex u, Complex v, int m) const {
  const Scalars& s = scalars();
  const DynamicalCoefficients& c = dc_;
  const MonodromyBlocks ku = chain_.blocks(u), kv = chain_.blocks(v);
  switch (r) {
    case DynRelation::BdBd:
      return relative_residual(family(ku, m + 2).B * family(kv, m).B, family(kv, m + 2).B * family(ku, m).B);
    case DynRelation::AdBd: {
      const Complex f = s.f(u, v), g = c.g(u, v, m), w = c.w(u, v, m);
      const DynamicalFamily U = family(ku, m), V = family(kv, m);
      return relative_residual(family(ku, m + 2).A * V.B, f * V.B * U.A + g * U.B * V.A + w * U.B * V.D);
    }
    case DynRelation::DdBd: {
      const Complex h = s.h(u, v), k = c.k(u, v, m), n = c.n(u, v, m);
      const DynamicalFamily U = family(ku, m), V = family(kv, m);
      return relative_residual(family(ku, m + 2).D * V.B, h * V.B * U.D + k * U.B * V.D + n * U.B * V.A);
    }
    case DynRelation::CdCd:
      return relative_residual(family(ku, m - 2).C * family(kv, m).C, family(kv, m - 2).C * family(ku, m).C);
    case DynRelation::hAdCd: {
      const Complex h = s.h(u, v), k = c.k_hat(u, v, m), n = c.n_hat(u, v, m);
      const DynamicalFamily U = family(ku, m), V = family(kv, m);
      return relative_residual(family(ku, m - 2).A_hat * V.C,
                               h * V.C * U.A_hat + k * U.C * V.A_hat + n * U.C * V.D_hat);
    }
    case DynRelation::hDdCd: {
      const Complex f = s.f(u, v), g = c.g_hat(u, v, m), w = c.w_hat(u, v, m);
      const DynamicalFamily U = family(ku, m), V = family(kv, m);
      return relative_residual(family(ku, m - 2).D_hat * V.C,
                               f * V.C * U.D_hat + g * U.C * V.D_hat + w * U.C * V.A_hat);
    }
  }
  throw std::invalid_argument("unknown dynamical relation");
}

BStringActions DynamicalChain::act_on_B_string(Complex u, const std::vector<Complex>& us, int m) const {
  const Scalars& s = scalars();
  const BoundaryFunctions& bf = chain_.functions();
  const Complex q = s.q();
  const int M = static_cast<int>(us.size());
  const Complex fu = s.product(&Scalars::f, u, us), hu = s.product(&Scalars::h, u, us);
  const Complex cu = Scalars::c(q * u) / u;
  const Complex at = bf.a_tilde(u), dt = bf.d_tilde(u), pq = s.phi(1.0 / (q * u));
  const Complex chi = dc_.chi(m), rho = dc_.rho(m);

  const Matrix S = string_B(us, m);
  const DynamicalFamily U = family(u, m), Uf = family(u, m - 2 * M);
  Matrix rA = fu * S * Uf.A;
  Matrix rD = hu * S * Uf.D;
  Matrix rtd = S * (fu * at * Uf.A + hu * dt * Uf.D);
  Matrix rps = S * (pq * fu * Uf.A - hu * Uf.D);
  for (int i = 0; i < M; ++i) {
    const Complex ui = us[i];
    const std::vector<Complex> others = remove_at(us, i);
    const Complex fi = s.product(&Scalars::f, ui, others), hi = s.product(&Scalars::h, ui, others);
    const Complex pqi = s.phi(1.0 / (q * ui)), pi = s.phi(ui);
    const Complex g = dc_.g(u, ui, m - 2), w = dc_.w(u, ui, m - 2), k = dc_.k(u, ui, m - 2), n = dc_.n(u, ui, m - 2);
    const Complex Ft = s.F_tilde(u, ui), G = s.G(u, ui);
    const Matrix Si = string_B(replace_at(us, i, u), m);
    const DynamicalFamily Ui = family(ui, m - 2 * M);
    const Matrix SA = Si * Ui.A, SD = Si * Ui.D;
    rA += g * fi * SA + w * hi * SD;
    rD += k * hi * SD + n * fi * SA;
    rtd += Ft * (pqi * fi * bf.a_tilde(ui) * SA - pi * hi * bf.d_tilde(ui) * SD) + chi * cu * (pqi * fi * SA - hi * SD);
    rps += G * (s.b(ui * ui) * pqi * fi * SA - s.b(1.0 / (q * q * ui * ui)) * hi * SD) + rho * (pqi * fi * SA - hi * SD);
  }
  BStringActions out;
  out.A = relative_residual(U.A * S, rA);
  out.D = relative_residual(U.D * S, rD);
  out.td = relative_residual((at * U.A + dt * U.D) * S, rtd);
  out.tps = relative_residual((pq * U.A - U.D) * S, rps);
  return out;
}

CStringActions DynamicalChain::act_on_C_string(Complex u, const std::vector<Complex>& us, int m) const {
  const Scalars& s = scalars();
  const BoundaryFunctions& bf = chain_.functions();
  const Complex q = s.q();
  const int M = static_cast<int>(us.size());
  const Complex fu = s.product(&Scalars::f, u, us), hu = s.product(&Scalars::h, u, us);
  const Complex cu = Scalars::c(q * u) / u;
  const Complex ah = bf.a_hat(u), dh = bf.d_hat(u), pq = s.phi(1.0 / (q * u));
  const Complex chih = dc_.chi_hat(m), rhoh = dc_.rho_hat(m);

  const Matrix S = string_C(us, m);
  const DynamicalFamily U = family(u, m), Uf = family(u, m + 2 * M);
  Matrix r1 = S * (hu * ah * Uf.A_hat + fu * dh * Uf.D_hat);
  Matrix r2 = S * (-hu * Uf.A_hat + pq * fu * Uf.D_hat);
  for (int i = 0; i < M; ++i) {
    const Complex ui = us[i];
    const std::vector<Complex> others = remove_at(us, i);
    const Complex fi = s.product(&Scalars::f, ui, others), hi = s.product(&Scalars::h, ui, others);
    const Complex pqi = s.phi(1.0 / (q * ui)), pi = s.phi(ui);
    const Complex Ft = s.F_tilde(u, ui), G = s.G(u, ui);
    const Matrix Si = string_C(replace_at(us, i, u), m);
    const DynamicalFamily Ui = family(ui, m + 2 * M);
    const Matrix SA = Si * Ui.A_hat, SD = Si * Ui.D_hat;
    r1 += Ft * (-pi * hi * bf.a_hat(ui) * SA + pqi * fi * bf.d_hat(ui) * SD) + chih * cu * (-hi * SA + pqi * fi * SD);
    r2 += G * (-s.b(1.0 / (q * q * ui * ui)) * hi * SA + s.b(ui * ui) * pqi * fi * SD) - rhoh * (-hi * SA + pqi * fi * SD);
  }
  CStringActions out;
  out.td_hat = relative_residual((ah * U.A_hat + dh * U.D_hat) * S, r1);
  out.tps_hat = relative_residual((-U.A_hat + pq * U.D_hat) * S, r2);
  return out;
}

SummationResiduals summation_identities(const DynamicalCoefficients& dc, Complex u, const std::vector<Complex>& us,
                                        int m) {
  const Scalars& s = dc.scalars();
  const int M = static_cast<int>(us.size());
  Complex s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < M; ++i) {
    const Complex ui = us[i];
    const std::vector<Complex> others = remove_at(us, i);
    const Complex fi = s.product(&Scalars::f, ui, others), hi = s.product(&Scalars::h, ui, others);
    s1 += dc.g(u, ui, m) * fi - dc.w(u, ui, m) * hi * s.phi(ui);
    s2 += dc.n(u, ui, m) * fi - dc.k(u, ui, m) * hi * s.phi(ui);
  }
  const Complex ratio = dc.gamma_m(m - 2 * M + 1) / guard(dc.gamma_m(m + 1), "gamma_{m+1}");
  return {relative_residual(s1, ratio - s.product(&Scalars::f, u, us)),
          relative_residual(s2, -s.phi(u) * (ratio - s.product(&Scalars::h, u, us)))};
}

}  // namespace xxz

#include "xxz/sampling.hpp"

#include <cmath>
#include <numbers>

namespace xxz {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Complex Sampler::generic(double lo, double hi) {
  const double r = std::exp(uniform(std::log(lo), std::log(hi)));
  const double th = uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(r, th);
}

ModelParams Sampler::model(int N) {
  for (;;) {
    ModelParams p;
    p.q = generic();
    p.v.clear();
    for (int i = 0; i < N; ++i) p.v.push_back(generic());
    try {
      p.validate();
      if (p.inhomogeneities_generic(1e-3)) return p;
    } catch (const std::exception&) {
    }
  }
}

ModelParams Sampler::homogeneous(int N) {
  for (;;) {
    ModelParams p = ModelParams::homogeneous(generic(), N);
    try {
      p.validate();
      return p;
    } catch (const InvalidParams&) {
    }
  }
}

FactorizedBoundary Sampler::factorized_boundary() {
  FactorizedBoundary f;
  f.tau = generic();
  f.tau_tilde = generic();
  f.mu = generic();
  f.mu_tilde = generic();
  f.kappa = generic();
  f.kappa_tilde = generic();
  f.xi = generic();
  f.xi_tilde = generic();
  return f;
}

GaugeFrame Sampler::frame(int m) {
  GaugeFrame g;
  g.alpha = generic();
  g.beta = generic();
  g.m = m;
  return g;
}

bool well_separated(const Scalars& s, Complex u, const std::vector<Complex>& others, double band) {
  const Complex q = s.q();
  auto ok = [&](Complex z) { return std::abs(s.b(z)) >= band; };
  if (!ok(u * u) || !ok(q * u * u) || !ok(q * q * u * u)) return false;
  for (Complex z : others)
    if (!ok(u / z) || !ok(u * z) || !ok(q * u * z) || !ok(q * u / z) || !ok(q * z / u)) return false;
  return true;
}

Complex Sampler::spectral_point(const Scalars& s, const std::vector<Complex>& others, double band) {
  for (;;) {
    const Complex u = generic(0.6, 1.7);
    if (well_separated(s, u, others, band)) return u;
  }
}

std::vector<Complex> Sampler::roots(int M, const Scalars& s, const std::vector<Complex>& v, double band) {
  std::vector<Complex> out;
  std::vector<Complex> others = v;
  while (static_cast<int>(out.size()) < M) {
    const Complex u = generic();
    if (!well_separated(s, u, others, band)) continue;
    out.push_back(u);
    others.push_back(u);
  }
  return out;
}

}  // namespace xxz

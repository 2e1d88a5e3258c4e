#pragma once

#include <numbers>
#include <random>

#include "monospec/rtheta.hpp"

namespace fixtures {

using namespace monospec;

// deterministic Siegel-space samples: Re symmetric in [-1/2,1/2], Im = B B^T + lam I
inline CMat random_tau(std::mt19937& rng, int g, double lam = 0.6) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  RMat re(g, g), b(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      re(i, j) = u(rng);
      b(i, j) = u(rng);
    }
  re = 0.5 * (re + re.transpose()).eval();
  const RMat im = b * b.transpose() + lam * RMat::Identity(g, g);
  CMat t(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) t(i, j) = cplx(re(i, j), im(i, j));
  return t;
}

inline CVec random_z(std::mt19937& rng, int g, double im_scale = 0.3) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVec z(g);
  for (int i = 0; i < g; ++i) z[i] = cplx(u(rng), im_scale * u(rng));
  return z;
}

// exp(pi y^T (Im tau)^-1 y): the growth factor the tolerance is relative to
inline double growth(const CMat& tau, const CVec& z) {
  const RVec y = z.imag();
  const RMat Y = tau.imag();
  return std::exp(std::numbers::pi * y.dot(Y.ldlt().solve(y)));
}

}  // namespace fixtures

#pragma once

#include <array>
#include <complex>

#include "monospec/rtheta.hpp"

namespace monospec {

struct ESIntegers {
  long n = 1;
  long m = 0;
};

// gcd(|n|,|m|) = 1, (m+n)(m-2n) < 0; throws validation otherwise
void validate_es(const ESIntegers& es);

struct BCurveParams {
  double b = 0.0;
  double chi = 0.0;
};

struct C3CurveParams {
  cplx alpha, beta, gamma;  // complex so that check_h1 can see non-real input
};

struct ESVectors {
  std::array<long, 4> n_vec;
  std::array<long, 4> m_vec;
};

// The rotation used in the closed-form period matrices, exp(-2 pi i/3).
cplx omega();

double solve_t(const ESIntegers& es);
BCurveParams curve_parameters(double t, const ESIntegers& es);
C3CurveParams to_c3(const BCurveParams& bc);
ESVectors es_vectors(const ESIntegers& es);
CMat wellstein_tau(const CVec& x);
CMat tau_from_integers(const ESIntegers& es);
CVec winding_vector(const ESIntegers& es, const CMat& tau);
bool check_h1(const C3CurveParams& c);
double ramanujan_residual(double x, double y);
// the root x in (0, y) of ramanujan_residual(x, y) = 0
double ramanujan_partner(double y);

}  // namespace monospec

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "monospec/curvefam.hpp"
#include "monospec/rtheta.hpp"

namespace monospec {

struct CyclicTau4 {
  cplx a, b, c, d;
  CMat assemble() const;
};

CMat reduce_tau(const CyclicTau4& ct);

// theta(3z1,z2,z2,z2; tau4) / [theta(z1,z2) theta(z1+1/3,z2) theta(z1-1/3,z2)] on the reduced tau
cplx fay_accola_ratio(cplx z1, cplx z2, const CyclicTau4& ct, double tol);
// same ratio with every theta summed over the cube |n_i| <= bound
cplx fay_accola_ratio_bruteforce(cplx z1, cplx z2, const CyclicTau4& ct, int bound);
// numerator at an arbitrary genus-4 point over the same denominator
cplx fay_accola_ratio_general(const CVec& z4, cplx z1, cplx z2, const CyclicTau4& ct, double tol);

// Cyclic matrix over the D6 base [[T,1/2],[1/2,-1/(12T)]] at T = i sqrt 3, with the
// Prym entry chosen so that kappa is constant (the monopole fixture).
CyclicTau4 monopole_cyclic_fixture();

struct HumbertResult {
  std::array<long, 5> q{};
  long discriminant = 0;
  double residual = 0.0;
  std::optional<cplx> d6_T;  // set when tau is literally [[T,1/2],[1/2,-1/(12T)]]
};

HumbertResult humbert_d6_form(const CMat& tau2, int search_bound = 12);

cplx h3_parameter_T(const ESIntegers& es);
std::array<cplx, 3> h3_reduced_residuals(double s, const ESIntegers& es);
// the same three residuals for a free T and y (eps = 0, +1, -1)
std::array<cplx, 3> h3_residuals_at(cplx T, double y);

double theta_constant_identity_1(cplx T);
// i sqrt3 [th4^2(0|T) th1 th4/th2^2](T/3|T) + [th4^2(0|T/3) th1 th4/th3^2](1/3|T/3), relative to term size
double theta_constant_identity_2(cplx T);
// the same with i sqrt3 on both terms, kept for comparison
double theta_constant_identity_2_both_factors(cplx T);

struct ZeroScan {
  std::vector<double> s_grid;
  std::array<std::vector<double>, 3> abs_residual;  // eps = 0, +1, -1
  std::array<std::vector<double>, 3> zeros;
  std::array<double, 3> median{};
  std::vector<double> interior_zeros;               // merged, sorted
  std::vector<double> boundary_zeros;               // subset of {0, 2}
  double min_abs = 0.0;
};

ZeroScan scan_reduced_h3(const ESIntegers& es, int samples);

// generic 1-D zero finder used by both H3 paths: local minima of |f| on the grid,
// golden-section refinement, accepted when the refined value < accept_rel * median
std::vector<double> find_abs_zeros(const std::vector<double>& s, const std::vector<double>& absval,
                                   const std::function<double(double)>& absf, double accept_rel,
                                   double* median_out = nullptr);

}  // namespace monospec

#pragma once

#include <complex>

namespace monospec {

using cplx = std::complex<double>;

// Gamma for x > 0.
double gamma_fn(double x);

// 2F1(1/3, 2/3; 1; t) on (0, 1).
double hyp2f1_13_23(double t);

// 2F1(1/3,2/3;1;t) / 2F1(1/3,2/3;1;1-t)
double f_ratio(double t);

// Jacobi theta, period 1 in z:
//   theta3(z|tau) = sum_n exp(i pi n^2 tau + 2 pi i n z)
// k = 1..4.
cplx jacobi_theta(int k, cplx z, cplx tau);

}  // namespace monospec

#include "monospec/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "monospec/errors.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;

void check_open_unit(double t, const char* who) {
  if (!(t > 0.0 && t < 1.0))
    throw Error(ErrorKind::domain, std::string(who) + ": argument must lie in (0,1), got " + std::to_string(t));
}

// sum_k (1/3)_k (2/3)_k / k!^2 t^k, |t| <= 1/2
double series_near_zero(double t) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    term *= (k + 1.0 / 3.0) * (k + 2.0 / 3.0) / ((k + 1.0) * (k + 1.0)) * t;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// c = a + b logarithmic expansion about t = 1:
// F = G(a+b)/(G(a)G(b)) sum_k (a)_k(b)_k/k!^2 [2psi(k+1) - psi(a+k) - psi(b+k) - ln(1-t)] (1-t)^k
double series_near_one(double t) {
  const double u = 1.0 - t;
  const double lu = std::log(u);
  const double a = 1.0 / 3.0, b = 2.0 / 3.0;
  double h = 3.0 * std::log(3.0);  // 2psi(1) - psi(1/3) - psi(2/3)
  double coef = 1.0;
  double sum = h - lu;
  for (int k = 0; k < 200; ++k) {
    coef *= (a + k) * (b + k) / ((k + 1.0) * (k + 1.0)) * u;
    h += 2.0 / (k + 1.0) - 1.0 / (a + k) - 1.0 / (b + k);
    const double term = coef * (h - lu);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(3.0) / (2.0 * kPi) * sum;  // 1/(G(1/3)G(2/3)) = sin(pi/3)/pi
}

// theta with characteristic (al, be) in {0, 1/2}^2:
//   sum_n exp(i pi (n+al)^2 tau + 2 pi i (n+al)(z+be))
cplx theta_char(double al, double be, cplx z, cplx tau) {
  const double yt = tau.imag();
  const cplx I(0.0, 1.0);
  // largest term sits near n + al = -Im z / Im tau
  const long n0 = std::lround(-z.imag() / yt - al);
  auto term = [&](long n) {
    const double m = static_cast<double>(n) + al;
    return std::exp(I * kPi * m * m * tau + 2.0 * kPi * I * m * (z + be));
  };
  cplx sum = term(n0);
  double peak = std::abs(sum);
  for (long k = 1; k <= 10000; ++k) {
    const cplx up = term(n0 + k), dn = term(n0 - k);
    sum += up + dn;
    peak = std::max(peak, std::abs(sum));
    if (std::abs(up) < 1e-16 * peak && std::abs(dn) < 1e-16 * peak) return sum;
  }
  throw Error(ErrorKind::non_convergence, "jacobi_theta: q-series did not converge within 1e4 terms");
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorKind::domain, "gamma_fn: argument must be positive, got " + std::to_string(x));
  return std::tgamma(x);
}

double hyp2f1_13_23(double t) {
  check_open_unit(t, "hyp2f1_13_23");
  return t <= 0.5 ? series_near_zero(t) : series_near_one(t);
}

double f_ratio(double t) {
  check_open_unit(t, "f_ratio");
  return hyp2f1_13_23(t) / hyp2f1_13_23(1.0 - t);
}

cplx jacobi_theta(int k, cplx z, cplx tau) {
  if (!(tau.imag() > 0.0))
    throw Error(ErrorKind::domain, "jacobi_theta: Im(tau) must be positive");
  switch (k) {
    case 1: return -theta_char(0.5, 0.5, z, tau);
    case 2: return theta_char(0.5, 0.0, z, tau);
    case 3: return theta_char(0.0, 0.0, z, tau);
    case 4: return theta_char(0.0, 0.5, z, tau);
    default: throw Error(ErrorKind::domain, "jacobi_theta: index must be 1..4");
  }
}

}  // namespace monospec

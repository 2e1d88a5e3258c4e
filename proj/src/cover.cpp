#include "monospec/cover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "monospec/errors.hpp"
#include "monospec/parallel.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
const cplx kI(0.0, 1.0);

cplx checked_div(cplx num, cplx den, const char* what) {
  if (std::abs(den) < 1e-300 || std::abs(den) < 1e-14 * std::abs(num))
    throw Error(ErrorKind::pole, std::string(what) + ": denominator theta vanishes");
  return num / den;
}

CVec vec2(cplx a, cplx b) {
  CVec v(2);
  v << a, b;
  return v;
}

CVec vec4(cplx a, cplx b, cplx c, cplx d) {
  CVec v(4);
  v << a, b, c, d;
  return v;
}

template <class Theta2, class Theta4>
cplx fa_ratio_impl(const CVec& z4, cplx z1, cplx z2, Theta2&& th2, Theta4&& th4) {
  const cplx den = th2(vec2(z1, z2)) * th2(vec2(z1 + 1.0 / 3.0, z2)) * th2(vec2(z1 - 1.0 / 3.0, z2));
  return checked_div(th4(z4), den, "fay_accola_ratio");
}

double golden_min(const std::function<double(double)>& f, double a, double b, double* xmin) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  *xmin = fc < fd ? c : d;
  return std::min(fc, fd);
}

}  // namespace

CMat CyclicTau4::assemble() const {
  CMat t(4, 4);
  t << a, b, b, b,
       b, c, d, d,
       b, d, c, d,
       b, d, d, c;
  return t;
}

CMat reduce_tau(const CyclicTau4& ct) {
  validate_period_matrix(ct.assemble());
  CMat t(2, 2);
  t << ct.a / 3.0, ct.b, ct.b, ct.c + 2.0 * ct.d;
  validate_period_matrix(t);
  return t;
}

cplx fay_accola_ratio(cplx z1, cplx z2, const CyclicTau4& ct, double tol) {
  return fay_accola_ratio_general(vec4(3.0 * z1, z2, z2, z2), z1, z2, ct, tol);
}

cplx fay_accola_ratio_general(const CVec& z4, cplx z1, cplx z2, const CyclicTau4& ct, double tol) {
  const CMat t2 = reduce_tau(ct);
  const ThetaEvaluator th4(ct.assemble(), tol), th2(t2, tol);
  return fa_ratio_impl(z4, z1, z2, th2, th4);
}

cplx fay_accola_ratio_bruteforce(cplx z1, cplx z2, const CyclicTau4& ct, int bound) {
  const CMat t4 = ct.assemble();
  const CMat t2 = reduce_tau(ct);
  return fa_ratio_impl(
      vec4(3.0 * z1, z2, z2, z2), z1, z2, [&](const CVec& z) { return riemann_theta_bruteforce(z, t2, bound); },
      [&](const CVec& z) { return riemann_theta_bruteforce(z, t4, bound); });
}

CyclicTau4 monopole_cyclic_fixture() {
  const cplx T = kI * kSqrt3;
  const cplx base22 = -1.0 / (12.0 * T);
  // Prym parameter c - d fixed by requiring the theta quotient to be z-independent;
  // closed form recovered numerically, kappa = 1/2 + i sqrt(3)/8
  const cplx prym = (2.0 / 171.0) * cplx(3.0, 4.0 * kSqrt3);
  CyclicTau4 ct;
  ct.a = 3.0 * T;
  ct.b = 0.5;
  ct.d = (base22 - prym) / 3.0;
  ct.c = base22 - 2.0 * ct.d;
  return ct;
}

HumbertResult humbert_d6_form(const CMat& tau2, int search_bound) {
  if (tau2.rows() != 2) throw Error(ErrorKind::invalid_matrix, "humbert_d6_form: genus-2 tau required");
  validate_period_matrix(tau2);
  const cplx t11 = tau2(0, 0), t12 = tau2(0, 1), t22 = tau2(1, 1);
  const cplx basis[5] = {1.0, t11, t12, t22, t12 * t12 - t11 * t22};
  const int B = search_bound;
  bool found = false;
  HumbertResult best;
  long best_l1 = 0;
  for (long q1 = -B; q1 <= B; ++q1)
    for (long q2 = -B; q2 <= B; ++q2)
      for (long q3 = -B; q3 <= B; ++q3)
        for (long q4 = -B; q4 <= B; ++q4)
          for (long q5 = -B; q5 <= B; ++q5) {
            const long q[5] = {q1, q2, q3, q4, q5};
            // one representative of each +-pair
            int first = 0;
            while (first < 5 && q[first] == 0) ++first;
            if (first == 5 || q[first] < 0) continue;
            cplx r = 0.0;
            for (int i = 0; i < 5; ++i) r += static_cast<double>(q[i]) * basis[i];
            if (std::abs(r) > 1e-8) continue;
            const long disc = q3 * q3 - 4 * (q1 * q5 + q2 * q4);
            if (disc <= 0) continue;
            const long root = std::lround(std::sqrt(static_cast<double>(disc)));
            if (root * root != disc) continue;
            const long l1 = std::labs(q1) + std::labs(q2) + std::labs(q3) + std::labs(q4) + std::labs(q5);
            if (!found || disc < best.discriminant || (disc == best.discriminant && l1 < best_l1)) {
              found = true;
              best.q = {q1, q2, q3, q4, q5};
              best.discriminant = disc;
              best.residual = std::abs(r);
              best_l1 = l1;
            }
          }
  if (!found)
    throw Error(ErrorKind::not_found,
                "humbert_d6_form: no singular relation with square discriminant within bound " + std::to_string(B));
  if (std::abs(t12 - 0.5) < 1e-10 && std::abs(t22 + 1.0 / (12.0 * t11)) < 1e-10) best.d6_T = t11;
  return best;
}

cplx h3_parameter_T(const ESIntegers& es) {
  validate_es(es);
  return 2.0 * kI * kSqrt3 * static_cast<double>(es.n + es.m) / static_cast<double>(2 * es.n - es.m);
}

std::array<cplx, 3> h3_residuals_at(cplx T, double y) {
  if (!(T.imag() > 0.0)) throw Error(ErrorKind::domain, "Im T must be positive");
  const cplx rt3 = kI * kSqrt3;  // sqrt(-3)
  std::array<cplx, 3> out;
  const int eps[3] = {0, 1, -1};
  for (int k = 0; k < 3; ++k) {
    const double e = eps[k];
    const cplx za = y * rt3 + e * T / 3.0;
    const cplx zb = y + e / 3.0;
    const cplx A = checked_div(jacobi_theta(3, za, T), jacobi_theta(2, za, T), "h3 residual");
    const cplx B = checked_div(jacobi_theta(2, zb, T / 3.0), jacobi_theta(3, zb, T / 3.0), "h3 residual");
    out[k] = A + (eps[k] == 0 ? 1.0 : -1.0) * B;
  }
  return out;
}

std::array<cplx, 3> h3_reduced_residuals(double s, const ESIntegers& es) {
  if (!(s >= 0.0 && s <= 2.0)) throw Error(ErrorKind::domain, "h3_reduced_residuals: s must lie in [0,2]");
  return h3_residuals_at(h3_parameter_T(es), s * static_cast<double>(es.n + es.m) / 3.0);
}

double theta_constant_identity_1(cplx T) {
  if (!(T.imag() > 0.0)) throw Error(ErrorKind::domain, "Im T must be positive");
  const cplx A = checked_div(jacobi_theta(3, T / 3.0, T), jacobi_theta(2, T / 3.0, T), "identity 1");
  const cplx B = checked_div(jacobi_theta(2, 1.0 / 3.0, T / 3.0), jacobi_theta(3, 1.0 / 3.0, T / 3.0), "identity 1");
  return std::abs(A - B);
}

namespace {

std::pair<cplx, cplx> identity2_terms(cplx T) {
  if (!(T.imag() > 0.0)) throw Error(ErrorKind::domain, "Im T must be positive");
  const cplx z1 = T / 3.0, t1 = T;
  const cplx A = std::pow(jacobi_theta(4, 0.0, t1), 2) *
                 checked_div(jacobi_theta(1, z1, t1) * jacobi_theta(4, z1, t1), std::pow(jacobi_theta(2, z1, t1), 2),
                             "identity 2");
  const cplx z2 = 1.0 / 3.0, t2 = T / 3.0;
  const cplx B = std::pow(jacobi_theta(4, 0.0, t2), 2) *
                 checked_div(jacobi_theta(1, z2, t2) * jacobi_theta(4, z2, t2), std::pow(jacobi_theta(3, z2, t2), 2),
                             "identity 2");
  return {A, B};
}

}  // namespace

double theta_constant_identity_2(cplx T) {
  const auto [A, B] = identity2_terms(T);
  const cplx a = kI * kSqrt3 * A;
  return std::abs(a + B) / std::max(std::abs(a), std::abs(B));
}

double theta_constant_identity_2_both_factors(cplx T) {
  const auto [A, B] = identity2_terms(T);
  const cplx a = kI * kSqrt3 * A, b = kI * kSqrt3 * B;
  return std::abs(a + b) / std::max(std::abs(a), std::abs(b));
}

std::vector<double> find_abs_zeros(const std::vector<double>& s, const std::vector<double>& absval,
                                   const std::function<double(double)>& absf, double accept_rel,
                                   double* median_out) {
  std::vector<double> sorted = absval;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (median_out) *median_out = median;
  std::vector<double> zeros;
  const double lo = s.front(), hi = s.back();
  const double edge = 1e-6 * (hi - lo);
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    if (!(absval[k] <= absval[k - 1] && absval[k] < absval[k + 1])) continue;
    double xm = s[k];
    const double fm = golden_min(absf, s[k - 1], s[k + 1], &xm);
    if (!(fm < accept_rel * median)) continue;
    if (xm - lo < edge || hi - xm < edge) continue;
    zeros.push_back(xm);
  }
  return zeros;
}

ZeroScan scan_reduced_h3(const ESIntegers& es, int samples) {
  validate_es(es);
  if (samples < 8) throw Error(ErrorKind::validation, "samples must be at least 8");
  ZeroScan out;
  out.s_grid.resize(samples);
  for (int k = 0; k < samples; ++k) out.s_grid[k] = 2.0 * k / (samples - 1);
  std::vector<std::array<cplx, 3>> vals(samples);
  parallel_for(samples, [&](std::size_t k) { vals[k] = h3_reduced_residuals(out.s_grid[k], es); });
  out.min_abs = INFINITY;
  for (int e = 0; e < 3; ++e) {
    auto& av = out.abs_residual[e];
    av.resize(samples);
    for (int k = 0; k < samples; ++k) av[k] = std::abs(vals[k][e]);
    auto f = [&, e](double s) { return std::abs(h3_reduced_residuals(std::clamp(s, 0.0, 2.0), es)[e]); };
    out.zeros[e] = find_abs_zeros(out.s_grid, av, f, 1e-9, &out.median[e]);
    for (int k = 1; k + 1 < samples; ++k) out.min_abs = std::min(out.min_abs, av[k]);
    if (av.front() < 1e-9 * out.median[e]) out.boundary_zeros.push_back(0.0);
    if (av.back() < 1e-9 * out.median[e]) out.boundary_zeros.push_back(2.0);
  }
  for (const auto& z : out.zeros) out.interior_zeros.insert(out.interior_zeros.end(), z.begin(), z.end());
  std::sort(out.interior_zeros.begin(), out.interior_zeros.end());
  out.interior_zeros.erase(std::unique(out.interior_zeros.begin(), out.interior_zeros.end(),
                                       [](double a, double b) { return std::abs(a - b) < 1e-7; }),
                           out.interior_zeros.end());
  std::sort(out.boundary_zeros.begin(), out.boundary_zeros.end());
  out.boundary_zeros.erase(std::unique(out.boundary_zeros.begin(), out.boundary_zeros.end()), out.boundary_zeros.end());
  return out;
}

}  // namespace monospec

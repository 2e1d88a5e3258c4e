#include "monospec/curvefam.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "monospec/errors.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;

CMat hmat() {
  CMat h = CMat::Identity(4, 4);
  h(3, 3) = -1.0;
  return h;
}

}  // namespace

void validate_es(const ESIntegers& es) {
  const long g = std::gcd(std::labs(es.n), std::labs(es.m));
  if (g != 1)
    throw Error(ErrorKind::validation,
                "(n,m) = (" + std::to_string(es.n) + "," + std::to_string(es.m) + ") are not coprime");
  if (es.m + es.n == 0 || 2 * es.n - es.m == 0)
    throw Error(ErrorKind::validation, "m+n and 2n-m must be nonzero");
  if (!((es.m + es.n) * (es.m - 2 * es.n) < 0))
    throw Error(ErrorKind::validation, "(m+n)(m-2n) must be negative");
}

cplx omega() {
  // rational angle, never a rounded literal
  return {std::cos(2.0 * kPi / 3.0), -std::sin(2.0 * kPi / 3.0)};
}

double solve_t(const ESIntegers& es) {
  if (es.m + es.n == 0) throw Error(ErrorKind::validation, "m+n must be nonzero");
  const double target = static_cast<double>(2 * es.n - es.m) / static_cast<double>(es.m + es.n);
  if (!(target > 0.0)) throw Error(ErrorKind::no_root, "solve_t: target ratio (2n-m)/(m+n) is not positive");
  const double lt = std::log(target);
  auto h = [&](double t) { return std::log(f_ratio(t)) - lt; };
  double lo = 1e-9, hi = 1.0 - 1e-9;
  if (h(lo) > 0.0 || h(hi) < 0.0) throw Error(ErrorKind::no_root, "solve_t: target ratio outside bracket");
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double dt = 1e-7 * std::min(t, 1.0 - t);
    const double d = (h(t + dt) - h(t - dt)) / (2.0 * dt);
    const double nt = t - h(t) / d;
    if (nt > lo - 1e-12 && nt < hi + 1e-12) t = nt;
  }
  return t;
}

BCurveParams curve_parameters(double t, const ESIntegers& es) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorKind::domain, "curve_parameters: t must lie in (0,1)");
  BCurveParams out;
  out.b = (1.0 - 2.0 * t) / std::sqrt(t * (1.0 - t));
  out.chi = -static_cast<double>(es.n + es.m) * (2.0 * kPi / (3.0 * std::sqrt(3.0))) *
            std::pow(t * (1.0 - t), 1.0 / 6.0) * hyp2f1_13_23(t);
  return out;
}

C3CurveParams to_c3(const BCurveParams& bc) { return {0.0, bc.chi, bc.b * bc.chi}; }

ESVectors es_vectors(const ESIntegers& es) {
  const long n = es.n, m = es.m;
  return {{n, m - n, -m, 2 * n - m}, {-m, n, m - n, 3 * n}};
}

CMat wellstein_tau(const CVec& x) {
  if (x.size() != 4) throw Error(ErrorKind::validation, "wellstein_tau: X must have length 4");
  const CMat h = hmat();
  const cplx w = omega(), w2 = w * w;
  const CVec hx = h * x;
  const cplx den = (x.transpose() * hx)(0, 0);
  if (std::abs(den) < 1e-14 * std::max(1.0, x.squaredNorm()))
    throw Error(ErrorKind::degenerate, "wellstein_tau: X^T H X vanishes");
  return w2 * (h + (w2 - 1.0) * hx * hx.transpose() / den);
}

CMat tau_from_integers(const ESIntegers& es) {
  validate_es(es);
  const ESVectors v = es_vectors(es);
  const CMat h = hmat();
  const cplx w = omega(), w2 = w * w;
  CVec nv(4), mv(4);
  for (int i = 0; i < 4; ++i) {
    nv[i] = static_cast<double>(v.n_vec[i]);
    mv[i] = static_cast<double>(v.m_vec[i]);
  }
  const CVec q = nv + w2 * (h * mv);
  const cplx den = (q.transpose() * h * q)(0, 0);
  if (std::abs(den) < 1e-12) throw Error(ErrorKind::degenerate, "tau_from_integers: q^T H q vanishes");
  CMat tau = w2 * h + (w - w2) * q * q.transpose() / den;
  // symmetric by construction; remove rounding asymmetry
  return 0.5 * (tau + tau.transpose());
}

CVec winding_vector(const ESIntegers& es, const CMat& tau) {
  if (tau.rows() != 4 || tau.cols() != 4) throw Error(ErrorKind::validation, "winding_vector: tau must be 4x4");
  const ESVectors v = es_vectors(es);
  CVec nv(4), mv(4);
  for (int i = 0; i < 4; ++i) {
    nv[i] = static_cast<double>(v.n_vec[i]);
    mv[i] = static_cast<double>(v.m_vec[i]);
  }
  return 0.5 * nv + 0.5 * (tau * mv);
}

bool check_h1(const C3CurveParams& c) {
  // eta^3 + alpha eta zeta^2 + beta zeta^6 + gamma zeta^3 - beta, keyed by (deg zeta, deg eta)
  std::map<std::pair<int, int>, cplx> p = {
      {{0, 3}, 1.0}, {{2, 1}, c.alpha}, {{6, 0}, c.beta}, {{3, 0}, c.gamma}, {{0, 0}, -c.beta}};
  // (zeta, eta) -> (-1/conj zeta, -conj eta / conj zeta^2), cleared by conj(zeta)^6;
  // the image curve is the zero set of the conjugated transformed polynomial
  std::map<std::pair<int, int>, cplx> q;
  for (const auto& [k, v] : p) {
    const auto [i, j] = k;
    const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    q[{6 - i - 2 * j, j}] += sgn * std::conj(v);
  }
  const cplx np = p.at({0, 3}), nq = q.at({0, 3});
  double scale = 0.0;
  for (const auto& [k, v] : p) scale = std::max(scale, std::abs(v / np));
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    const cplx w = it == q.end() ? cplx(0.0) : it->second / nq;
    if (std::abs(v / np - w) > 1e-12 * std::max(1.0, scale)) return false;
  }
  for (const auto& [k, v] : q)
    if (!p.count(k) && std::abs(v / nq) > 1e-12 * std::max(1.0, scale)) return false;
  return true;
}

double ramanujan_residual(double x, double y) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
    throw Error(ErrorKind::domain, "ramanujan_residual: (x,y) must lie in (0,1)^2");
  return std::cbrt(x * y) + std::cbrt((1.0 - x) * (1.0 - y)) - 1.0;
}

double ramanujan_partner(double y) {
  if (!(y > 0.0 && y < 1.0)) throw Error(ErrorKind::domain, "ramanujan_partner: y must lie in (0,1)");
  // residual is negative near x = 0 and positive at x = y
  double lo = 0.0, hi = y;
  auto r = [&](double x) { return std::cbrt(x * y) + std::cbrt((1.0 - x) * (1.0 - y)) - 1.0; };
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    const double mid = 0.5 * (lo + hi);
    (r(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace monospec

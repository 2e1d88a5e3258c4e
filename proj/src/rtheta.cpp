#include "monospec/rtheta.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "monospec/errors.hpp"
#include "monospec/parallel.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;

// Gamma(s, x) for s in {1/2, 1, 3/2, 2}
double upper_gamma_half(int two_s, double x) {
  double s, val;
  if (two_s % 2 == 1) {
    s = 0.5;
    val = std::sqrt(kPi) * std::erfc(std::sqrt(x));
  } else {
    s = 1.0;
    val = std::exp(-x);
  }
  while (2.0 * s < two_s) {
    val = s * val + std::pow(x, s) * std::exp(-x);
    s += 1.0;
  }
  return val;
}

RMat cholesky_upper(const RMat& a) {
  Eigen::LLT<RMat> llt(a);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::invalid_matrix, "imaginary part of tau is not positive definite");
  return llt.matrixU();
}

// Enumerates integer n with ||u(n + c)|| <= r, calling visit(n).
template <class F>
void ellipsoid_points(const RMat& u, const RVec& c, double r, F&& visit) {
  const int g = static_cast<int>(u.rows());
  Eigen::VectorXi n(g);
  std::vector<double> rem(g + 1);
  rem[g] = r * r;
  auto rec = [&](auto&& self, int i) -> void {
    double shift = 0.0;
    for (int j = i + 1; j < g; ++j) shift += u(i, j) * (n[j] + c[j]);
    const double mid = -c[i] - shift / u(i, i);
    const double half = std::sqrt(std::max(rem[i + 1], 0.0)) / u(i, i);
    const long lo = static_cast<long>(std::ceil(mid - half));
    const long hi = static_cast<long>(std::floor(mid + half));
    for (long k = lo; k <= hi; ++k) {
      n[i] = static_cast<int>(k);
      const double row = u(i, i) * (k + c[i]) + shift;
      rem[i] = rem[i + 1] - row * row;
      if (i == 0)
        visit(n);
      else
        self(self, i - 1);
    }
  };
  rec(rec, g - 1);
}

double shortest_vector(const RMat& u) {
  double r = u.colwise().norm().minCoeff();
  double best = r;
  const RVec zero = RVec::Zero(u.rows());
  ellipsoid_points(u, zero, r * (1 + 1e-12), [&](const Eigen::VectorXi& n) {
    if (n.cwiseAbs().sum() == 0) return;
    best = std::min(best, (u * n.cast<double>()).norm());
  });
  return best;
}

}  // namespace

void validate_period_matrix(const CMat& tau) {
  if (tau.rows() != tau.cols() || tau.rows() < 1 || tau.rows() > 4)
    throw Error(ErrorKind::invalid_matrix, "tau must be square with genus 1..4");
  for (int i = 0; i < tau.rows(); ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(tau(i, j) - tau(j, i)) > 1e-12)
        throw Error(ErrorKind::invalid_matrix,
                    "tau is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  Eigen::SelfAdjointEigenSolver<RMat> es(tau.imag());
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorKind::invalid_matrix, "imaginary part of tau is not positive definite");
}

namespace {

// Deconinck et al. tail bound: (g/2) (2/rho)^g Gamma(g/2, (R - rho/2)^2)
double tail_at(int g, double rho, double r) {
  const double x = (r - rho / 2) * (r - rho / 2);
  return 0.5 * g * std::pow(2.0 / rho, g) * upper_gamma_half(g, x);
}

}  // namespace

double truncation_tail_bound(const CMat& tau, double radius) {
  validate_period_matrix(tau);
  const RMat u = cholesky_upper(kPi * tau.imag());
  return tail_at(static_cast<int>(tau.rows()), shortest_vector(u), radius);
}

double truncation_radius(const CMat& tau, double tol, const RVec& /*y*/) {
  validate_period_matrix(tau);
  if (!(tol > 0.0)) throw Error(ErrorKind::domain, "truncation_radius: tol must be positive");
  const RMat u = cholesky_upper(kPi * tau.imag());
  const int g = static_cast<int>(tau.rows());
  const double rho = shortest_vector(u);
  double r = 0.5 * (std::sqrt(2.0 * g) + rho);
  while (tail_at(g, rho, r) > tol) r += 0.05;
  return r;
}

ThetaEvaluator::ThetaEvaluator(const CMat& tau, double tol) : g_(static_cast<int>(tau.rows())), tau_(tau) {
  radius_ = truncation_radius(tau, tol, RVec::Zero(g_));
  u_ = cholesky_upper(kPi * tau.imag());
  yinv_ = tau.imag().inverse();
}

template <class F>
void ThetaEvaluator::enumerate(const RVec& c, F&& visit) const {
  ellipsoid_points(u_, c, radius_, visit);
}

cplx ThetaEvaluator::operator()(const CVec& z) const {
  if (z.size() != g_) throw Error(ErrorKind::validation, "theta: z length does not match genus");
  const RVec c = yinv_ * z.imag();
  const cplx I(0.0, 1.0);
  const int g = g_;
  cplx sum = 0.0;
  enumerate(c, [&](const Eigen::VectorXi& n) {
    cplx q = 0.0, l = 0.0;
    for (int i = 0; i < g; ++i) {
      if (n[i] == 0) continue;
      cplx row = tau_(i, i) * static_cast<double>(n[i]);
      for (int j = i + 1; j < g; ++j) row += 2.0 * tau_(i, j) * static_cast<double>(n[j]);
      q += row * static_cast<double>(n[i]);
      l += z[i] * static_cast<double>(n[i]);
    }
    sum += std::exp(I * kPi * q + 2.0 * kPi * I * l);
  });
  return sum;
}

std::size_t ThetaEvaluator::point_count(const RVec& y) const {
  std::size_t k = 0;
  enumerate(yinv_ * y, [&](const Eigen::VectorXi&) { ++k; });
  return k;
}

cplx riemann_theta(const CVec& z, const CMat& tau, double tol) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw Error(ErrorKind::domain, "riemann_theta: tol must lie in (0, 1e-6]");
  return ThetaEvaluator(tau, tol)(z);
}

std::vector<cplx> riemann_theta_along_line(const CVec& z0, const CVec& direction,
                                           const std::vector<double>& s_grid, const CMat& tau,
                                           double tol) {
  if (s_grid.empty()) throw Error(ErrorKind::validation, "s_grid must be nonempty");
  for (std::size_t i = 1; i < s_grid.size(); ++i)
    if (!(s_grid[i] > s_grid[i - 1])) throw Error(ErrorKind::validation, "s_grid must be strictly increasing");
  if (direction.size() != z0.size()) throw Error(ErrorKind::validation, "direction length mismatch");
  if (!(tol > 0.0 && tol <= 1e-6)) throw Error(ErrorKind::domain, "riemann_theta: tol must lie in (0, 1e-6]");
  const ThetaEvaluator th(tau, tol);
  std::vector<cplx> out(s_grid.size());
  parallel_for(s_grid.size(), [&](std::size_t i) { out[i] = th(z0 + s_grid[i] * direction); });
  return out;
}

cplx riemann_theta_bruteforce(const CVec& z, const CMat& tau, int bound) {
  const int g = static_cast<int>(tau.rows());
  const cplx I(0.0, 1.0);
  Eigen::VectorXi n = Eigen::VectorXi::Constant(g, -bound);
  cplx sum = 0.0;
  for (;;) {
    const CVec nv = n.cast<cplx>();
    sum += std::exp(I * kPi * (nv.transpose() * tau * nv)(0, 0) + 2.0 * kPi * I * (nv.transpose() * z)(0, 0));
    int i = 0;
    while (i < g && n[i] == bound) n[i++] = -bound;
    if (i == g) break;
    ++n[i];
  }
  return sum;
}

}  // namespace monospec

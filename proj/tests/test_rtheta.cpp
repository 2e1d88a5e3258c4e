#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "monospec/curvefam.hpp"
#include "monospec/errors.hpp"
#include "monospec/specfun.hpp"

using namespace monospec;
using fixtures::growth;
using fixtures::random_tau;
using fixtures::random_z;

TEST_CASE("theta at z = 0, tau = i I_2 is the square of the 1-D sum") {
  const CMat tau = cplx(0, 1) * CMat::Identity(2, 2);
  const cplx v = riemann_theta(CVec::Zero(2), tau, 1e-13);
  CHECK(std::abs(v - 1.18034059901609622605) < 1e-12);
}

TEST_CASE("parity and lattice periodicity") {
  std::mt19937 rng(7);
  for (int k = 0; k < 10; ++k) {
    const int g = 1 + k % 4;
    const CMat tau = random_tau(rng, g);
    const CVec z = random_z(rng, g);
    const double tol = 1e-11;
    const ThetaEvaluator th(tau, tol);
    const double gr = growth(tau, z);
    CHECK(std::abs(th(z) - th(-z)) <= 2 * tol * gr);
    CVec m = CVec::Zero(g);
    for (int i = 0; i < g; ++i) m[i] = double((k + i) % 3 - 1);
    CHECK(std::abs(th(z + m) - th(z)) <= 2 * tol * gr);
  }
}

TEST_CASE("quasi-periodicity") {
  std::mt19937 rng(11);
  const double pi = std::numbers::pi;
  for (int k = 0; k < 6; ++k) {
    const int g = 1 + k % 3;
    const CMat tau = random_tau(rng, g, 1.0);
    const CVec z = random_z(rng, g, 0.2);
    CVec m(g);
    for (int i = 0; i < g; ++i) m[i] = double(((k + 2 * i) % 5) - 2);
    const double tol = 1e-12;
    const ThetaEvaluator th(tau, tol);
    const CVec zs = z + tau * m;
    const cplx mtm = (m.transpose() * tau * m)(0, 0);
    const cplx zm = (z.transpose() * m)(0, 0);
    const cplx factor = std::exp(cplx(0, -pi) * mtm - cplx(0, 2 * pi) * zm);
    const double scale = growth(tau, zs);
    CHECK(std::abs(th(zs) - factor * th(z)) <= 4 * tol * scale);
  }
}

TEST_CASE("block-diagonal tau factorizes") {
  std::mt19937 rng(3);
  const CMat a = random_tau(rng, 2), b = random_tau(rng, 2);
  CMat tau = CMat::Zero(4, 4);
  tau.block(0, 0, 2, 2) = a;
  tau.block(2, 2, 2, 2) = b;
  const CVec z = random_z(rng, 4);
  const cplx full = riemann_theta(z, tau, 1e-12);
  const cplx prod = riemann_theta(z.head(2), a, 1e-12) * riemann_theta(z.tail(2), b, 1e-12);
  CHECK(std::abs(full - prod) < 1e-10);
}

TEST_CASE("genus 1 agrees with theta3") {
  std::mt19937 rng(5);
  for (int k = 0; k < 5; ++k) {
    const CMat tau = random_tau(rng, 1, 0.4);
    const CVec z = random_z(rng, 1);
    CHECK(std::abs(riemann_theta(z, tau, 1e-14) - jacobi_theta(3, z[0], tau(0, 0))) < 1e-12);
  }
}

TEST_CASE("evaluator matches the brute-force cube sum") {
  std::mt19937 rng(13);
  for (int g = 2; g <= 3; ++g) {
    const CMat tau = random_tau(rng, g, 0.8);
    const CVec z = random_z(rng, g);
    CHECK(std::abs(riemann_theta(z, tau, 1e-13) - riemann_theta_bruteforce(z, tau, 8)) < 1e-12);
  }
}

TEST_CASE("theta along a line") {
  std::mt19937 rng(17);
  const CMat tau = random_tau(rng, 3);
  const CVec z0 = random_z(rng, 3), dir = random_z(rng, 3, 0.1);
  std::vector<double> s;
  for (int k = 0; k < 40; ++k) s.push_back(0.05 * k);
  const auto vals = riemann_theta_along_line(z0, dir, s, tau, 1e-11);
  REQUIRE(vals.size() == s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const CVec z = z0 + s[k] * dir;
    CHECK(std::abs(vals[k] - riemann_theta(z, tau, 1e-11)) <= 2e-11 * growth(tau, z));
  }
  const auto flat = riemann_theta_along_line(z0, CVec::Zero(3), s, tau, 1e-11);
  for (const cplx v : flat) CHECK(std::abs(v - flat.front()) < 1e-14);

  CMat t1(1, 1);
  t1(0, 0) = cplx(0, 1);
  const auto one = riemann_theta_along_line(CVec::Zero(1), CVec::Ones(1), {0.5}, t1, 1e-13);
  CHECK(std::abs(one[0] - jacobi_theta(3, 0.5, cplx(0, 1))) < 1e-13);

  CHECK_THROWS_AS(riemann_theta_along_line(z0, dir, {}, tau, 1e-10), Error);
  CHECK_THROWS_AS(riemann_theta_along_line(z0, dir, {0.2, 0.1}, tau, 1e-10), Error);
}

TEST_CASE("truncation radius") {
  std::mt19937 rng(19);
  const CMat tau = random_tau(rng, 3);
  const RVec y = RVec::Zero(3);
  CHECK(truncation_radius(tau, 1e-12, y) >= truncation_radius(tau, 1e-8, y));
  CHECK(truncation_tail_bound(tau, truncation_radius(tau, 1e-12, y)) <= 1e-12);

  // tau = i: e^{-16 pi} < 1e-13 < e^{-9 pi}, so |n| <= 3 is needed and sufficient
  CMat t1(1, 1);
  t1(0, 0) = cplx(0, 1);
  const double r = truncation_radius(t1, 1e-13, RVec::Zero(1));
  CHECK(r >= 3.0 * std::sqrt(std::numbers::pi));
  CHECK(truncation_tail_bound(t1, r) <= 1e-13);
  const ThetaEvaluator th(t1, 1e-13);
  CHECK(th.point_count(RVec::Zero(1)) >= 7);

  // genus-4 monopole matrix stays cheap
  const CMat t4 = tau_from_integers({1, 0});
  const ThetaEvaluator th4(t4, 1e-10);
  const std::size_t n = th4.point_count(RVec::Zero(4));
  CHECK(n > 0);
  CHECK(n <= 100000);
}

TEST_CASE("invalid period matrices and tolerances") {
  CMat bad(2, 2);
  bad << cplx(0, 1), 0.3, 0.1, cplx(0, 1);
  CHECK_THROWS_AS(validate_period_matrix(bad), Error);
  CMat notpd(2, 2);
  notpd << cplx(0, 1), cplx(0, 2), cplx(0, 2), cplx(0, 1);
  try {
    riemann_theta(CVec::Zero(2), notpd, 1e-10);
    FAIL("expected invalid_matrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_matrix);
  }
  CHECK_THROWS_AS(validate_period_matrix(cplx(0, 1) * CMat::Identity(5, 5)), Error);
  CHECK_THROWS_AS(riemann_theta(CVec::Zero(2), cplx(0, 1) * CMat::Identity(2, 2), 1e-3), Error);
  CHECK_THROWS_AS(riemann_theta(CVec::Zero(3), cplx(0, 1) * CMat::Identity(2, 2), 1e-10), Error);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "monospec/curvefam.hpp"
#include "monospec/errors.hpp"
#include "monospec/specfun.hpp"

using namespace monospec;

namespace {
const double kS3 = std::sqrt(3.0);
const double kChi = -1.24920224023376943583;  // closed form, mpmath

CMat hmat() {
  CMat h = CMat::Identity(4, 4);
  h(3, 3) = -1.0;
  return h;
}

CVec to_c(const std::array<long, 4>& v) {
  CVec c(4);
  for (int i = 0; i < 4; ++i) c[i] = double(v[i]);
  return c;
}

const ESIntegers kValid[10] = {{1, 0}, {1, 1}, {4, -1}, {2, 1}, {3, 1}, {3, 2}, {4, 3}, {5, 2}, {2, -1}, {5, 1}};
}  // namespace

TEST_CASE("validate_es") {
  CHECK_NOTHROW(validate_es({1, 0}));
  CHECK_NOTHROW(validate_es({4, -1}));
  CHECK_THROWS_AS(validate_es({2, 0}), Error);   // gcd
  CHECK_THROWS_AS(validate_es({1, -1}), Error);  // m + n = 0
  CHECK_THROWS_AS(validate_es({1, 2}), Error);   // 2n - m = 0
  CHECK_THROWS_AS(validate_es({1, 3}), Error);   // wrong sign
}

TEST_CASE("solve_t") {
  CHECK(std::abs(solve_t({1, 0}) - (0.5 + 5 * kS3 / 18)) < 1e-10);
  CHECK(std::abs(solve_t({1, 1}) - (0.5 - 5 * kS3 / 18)) < 1e-10);
  CHECK(std::abs(solve_t({1, 0}) - 0.9811252243) < 1e-10);
  for (const ESIntegers es : {ESIntegers{4, -1}, {2, 1}, {3, 1}, {3, 2}, {5, 2}}) {
    const double target = double(2 * es.n - es.m) / double(es.m + es.n);
    CHECK(std::abs(f_ratio(solve_t(es)) - target) < 1e-11);
  }
}

TEST_CASE("curve_parameters") {
  CHECK(std::abs(curve_parameters(0.5, {1, 0}).b) < 1e-15);
  const BCurveParams p10 = curve_parameters(solve_t({1, 0}), {1, 0});
  CHECK(std::abs(p10.b + 5 * std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(p10.chi - kChi) < 1e-9);
  const BCurveParams p11 = curve_parameters(solve_t({1, 1}), {1, 1});
  CHECK(std::abs(p11.b - 5 * std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(p11.chi - kChi) < 1e-9);
  for (const double t : {0.1, 0.3, 0.77})
    CHECK(std::abs(curve_parameters(t, {1, 0}).b + curve_parameters(1 - t, {1, 0}).b) < 1e-13);
  CHECK_THROWS_AS(curve_parameters(1.0, {1, 0}), Error);
  CHECK_THROWS_AS(curve_parameters(0.0, {1, 0}), Error);
}

TEST_CASE("es_vectors") {
  const auto a = es_vectors({1, 0});
  CHECK(a.n_vec == std::array<long, 4>{1, -1, 0, 2});
  CHECK(a.m_vec == std::array<long, 4>{0, 1, -1, 3});
  const auto b = es_vectors({1, 1});
  CHECK(b.n_vec == std::array<long, 4>{1, 0, -1, 1});
  CHECK(b.m_vec == std::array<long, 4>{-1, 1, 0, 3});
  const auto c = es_vectors({4, -1});
  CHECK(c.n_vec == std::array<long, 4>{4, -5, 1, 9});
  CHECK(c.m_vec == std::array<long, 4>{1, 4, -5, 12});
}

TEST_CASE("period matrices from integers") {
  const CMat h = hmat();
  const cplx w2 = omega() * omega();
  for (const ESIntegers es : kValid) {
    const CMat tau = tau_from_integers(es);
    CHECK((tau - tau.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_NOTHROW(validate_period_matrix(tau));
    const auto v = es_vectors(es);
    const CVec x = h * (to_c(v.n_vec) + w2 * (h * to_c(v.m_vec)));
    CHECK((wellstein_tau(x) - tau).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((wellstein_tau(cplx(2.5, -1.0) * x) - tau).cwiseAbs().maxCoeff() < 1e-13);
  }
  CVec e1 = CVec::Zero(4);
  e1[0] = 1.0;
  CMat expect = h;
  expect(0, 0) += w2 - 1.0;
  CHECK((wellstein_tau(e1) - w2 * expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("omega is exp(-2 pi i/3)") {
  CHECK(std::abs(omega() - std::exp(cplx(0, -2 * std::numbers::pi / 3))) < 1e-15);
  CHECK(std::abs(std::pow(omega(), 3) - 1.0) < 1e-14);
}

TEST_CASE("winding vector is a half period") {
  for (const ESIntegers es : {ESIntegers{1, 0}, {1, 1}, {4, -1}}) {
    const CMat tau = tau_from_integers(es);
    const CVec u = winding_vector(es, tau);
    const auto v = es_vectors(es);
    CHECK((2.0 * u - to_c(v.n_vec) - tau * to_c(v.m_vec)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("check_h1") {
  const BCurveParams p = curve_parameters(solve_t({1, 0}), {1, 0});
  const C3CurveParams c = to_c3(p);
  CHECK(std::abs(c.beta.real() - kChi) < 1e-9);
  CHECK(std::abs(c.gamma.real() - (-5 * std::sqrt(2.0) * kChi)) < 1e-9);
  CHECK(check_h1(c));
  CHECK(check_h1({0.3, -2.0, 1.7}));
  C3CurveParams bad = c;
  bad.beta *= cplx(1.0, 0.01);
  CHECK_FALSE(check_h1(bad));
}

TEST_CASE("ramanujan relation") {
  CHECK(std::abs(ramanujan_residual(0.5, 0.5) - (2 * std::cbrt(0.25) - 1)) < 1e-15);
  CHECK(std::abs(ramanujan_residual(0.5 - 5 * kS3 / 18, 0.5)) < 1e-12);
  CHECK(std::abs(ramanujan_residual(0.5 + 5 * kS3 / 18, 0.5)) < 1e-12);
  for (const double y : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double x = ramanujan_partner(y);
    CHECK(std::abs(ramanujan_residual(x, y)) < 1e-13);
    CHECK(std::abs(f_ratio(1 - x) - 2 * f_ratio(1 - y)) < 1e-9);
  }
  CHECK_THROWS_AS(ramanujan_residual(0.0, 0.5), Error);
}

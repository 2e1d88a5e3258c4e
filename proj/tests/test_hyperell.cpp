#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "monospec/errors.hpp"
#include "monospec/hyperell.hpp"

using namespace monospec;

namespace {
const double kG0 = 5.0 * std::sqrt(2.0);
const double kChi = -1.24920224023376943583;

double rel2(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b) {
  const double s = std::max(std::abs(b[0]), std::abs(b[1]));
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])) / s;
}
}  // namespace

TEST_CASE("branch points") {
  const BranchSet z = branch_points({0.0, 0.0});
  for (const cplx r : z.all()) {
    CHECK(std::abs(std::pow(r, 6) + 4.0) < 1e-12);
    CHECK(std::abs(std::abs(r) - std::cbrt(2.0)) < 1e-14);
  }
  CHECK(std::abs(z.min_distance - std::cbrt(2.0)) < 1e-13);
  CHECK(std::abs(degeneracy_indicator({0.0, 0.0}) - std::cbrt(2.0)) < 1e-13);

  for (const HECurve c : {HECurve{0.0, -kG0}, HECurve{1.0, 3.0}, HECurve{2.5, -0.7}}) {
    const BranchSet bs = branch_points(c);
    for (const cplx r : bs.all()) CHECK(sextic_residual(c, r) <= 1e-10 * (1 + std::pow(std::abs(r), 6)));
    for (int k = 0; k < 3; ++k) {
      CHECK(bs.minus[k] == std::conj(bs.plus[k]));
      CHECK(std::abs(std::pow(bs.plus[k], 3) + c.a * bs.plus[k] + c.g - cplx(0, 2)) < 1e-12);
    }
    CHECK(bs.plus[0].real() <= bs.plus[1].real());
    CHECK(bs.plus[1].real() <= bs.plus[2].real());
    CHECK(bs.min_distance > 0.1);
  }

  // X^3 + 3X - 2i = (X - i)^2 (X + 2i)
  const BranchSet d = branch_points({3.0, 0.0});
  CHECK(d.min_distance < 1e-7);
  CHECK(degeneracy_indicator({3.0, 0.0}) < 1e-7);
  int near_i = 0;
  for (const cplx r : d.plus) near_i += std::abs(r - cplx(0, 1)) < 1e-6;
  CHECK(near_i == 2);
}

TEST_CASE("contour quadrature") {
  const HECurve c{1.0, 3.0};
  const BranchSet bs = branch_points(c);
  CyclePath empty;
  empty.waypoints = {cplx(5.5, 0), cplx(6.5, 0), cplx(6.5, 1), cplx(5.5, 1), cplx(5.5, 0)};
  CHECK(std::abs(period_quadrature(c, empty, Differential::dx)) < 1e-10);
  CHECK(std::abs(period_quadrature(c, empty, Differential::xdx)) < 1e-10);

  // the stadium around a pair reproduces the segment formula
  const CyclePath p = pair_cycle_path(bs, bs.plus[0], bs.plus[1]);
  CHECK(p.waypoints.front() == p.waypoints.back());
  QuadratureOptions opt;
  opt.y_start = canonical_y(bs, p.waypoints.front());
  const auto seg = pair_loop_quadrature(bs, bs.plus[0], bs.plus[1]);
  const std::array<cplx, 2> loop = {period_quadrature(c, p, Differential::dx, opt),
                                    period_quadrature(c, p, Differential::xdx, opt)};
  CHECK(rel2(loop, seg) < 1e-10);

  CyclePath close;
  close.waypoints = {bs.plus[0] + 1e-5, bs.plus[0] + cplx(1, 0), bs.plus[0] + 1e-5};
  try {
    period_quadrature(c, close, Differential::dx);
    FAIL("expected path_too_close");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::path_too_close);
  }
}

TEST_CASE("loop integrals against the mpmath oracle") {
  // straight-segment loops, Y continued from the canonical branch at the midpoint
  const BranchSet bs = branch_points({1.3, 2.1});
  const std::array<cplx, 2> l01 = {cplx(1.2749370726194157, -2.0519473736553632),
                                   cplx(-1.8679703183677015, 0.34384801423560869)};
  const std::array<cplx, 2> l12 = {cplx(-0.7380251468019435, -2.2121449328550716),
                                   cplx(-1.3530446831410401, -1.4874883462480806)};
  CHECK(rel2(pair_loop_quadrature(bs, bs.plus[0], bs.plus[1]), l01) < 1e-12);
  CHECK(rel2(pair_loop_quadrature(bs, bs.plus[1], bs.plus[2]), l12) < 1e-12);
  CHECK(rel2(period_agm(bs, 0, 1).value, l01) < 1e-12);
  CHECK(rel2(period_agm(bs, 1, 2).value, l12) < 1e-12);
  CHECK(std::abs(es_constraint({1.3, 2.1}, Branch::plus).re - (-0.40222644196894255)) < 1e-12);
  CHECK(std::abs(es_constraint({1.3, 2.1}, Branch::minus).re - 3.6236979968737759) < 1e-12);
}

TEST_CASE("ES constraint vanishes at the tetrahedral points") {
  for (const PeriodMethod m : {PeriodMethod::agm, PeriodMethod::quadrature, PeriodMethod::contour}) {
    const ESValue p = es_constraint({0.0, kG0}, Branch::plus, m);
    const ESValue q = es_constraint({0.0, -kG0}, Branch::minus, m);
    CHECK(std::abs(p.re) < 1e-8);
    CHECK(std::abs(p.im) < 1e-8);
    CHECK(std::abs(q.re) < 1e-8);
    CHECK(std::abs(q.im) < 1e-8);
    CHECK(p.method == m);
  }
  CHECK(es_constraint({0.0, kG0}).method == PeriodMethod::agm);
  // wrong combination does not vanish
  CHECK(std::abs(es_constraint({0.0, kG0}, Branch::minus).re) > 1.0);
}

TEST_CASE("regression value at (0,0)") {
  const ESValue v = es_constraint({0.0, 0.0});
  CHECK(std::abs(v.re - (-2.6499581254281749)) < 1e-12);
  CHECK(std::abs(v.im) < 1e-12);
  CHECK(std::abs(es_constraint({0.0, 0.0}, Branch::plus, PeriodMethod::quadrature).re - v.re) < 1e-12);
}

TEST_CASE("beta at the anchors equals chi") {
  CHECK(std::abs(beta_from_ag({0.0, -kG0}, {1, 0}) - kChi) < 1e-9);
  CHECK(std::abs(beta_from_ag({0.0, kG0}, {1, 1}) - kChi) < 1e-9);
  CHECK(std::abs(beta_from_ag({0.0, kG0}, {1, 1}, PeriodMethod::quadrature) - kChi) < 1e-9);
  CHECK(beta_from_period(2.0) == 2.0 * beta_from_period(1.0));
  CHECK(branch_for({1, 0}) == Branch::minus);
  CHECK(branch_for({1, 1}) == Branch::plus);
  CHECK_THROWS_AS(branch_for({4, -1}), Error);
}

TEST_CASE("AGM agrees with quadrature on the validation grid") {
  int used = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const HECurve c{3.0 * i / 4.0, 8.0 * j / 4.0};
      const BranchSet bs = branch_points(c);
      if (bs.min_distance < 0.1) continue;
      ++used;
      for (auto [p, q] : {std::pair{0, 1}, std::pair{1, 2}}) {
        const auto a = period_agm(bs, p, q);
        const auto ref = pair_loop_quadrature(bs, bs.plus[p], bs.plus[q]);
        CHECK(rel2(a.value, ref) <= 1e-9);
        CHECK(a.iterations <= 60);
      }
    }
  CHECK(used >= 20);
  const BranchSet g = branch_points({1.0, 3.0});
  CHECK(rel2(period_agm(g, 0, 2).value, pair_loop_quadrature(g, g.plus[0], g.plus[2])) <= 1e-9);
}

TEST_CASE("near the cusp: agreement or an explicit branch-choice failure") {
  const BranchSet bs = branch_points({2.99, 0.01});
  const auto ref = pair_loop_quadrature(bs, bs.plus[0], bs.plus[1]);
  try {
    CHECK(rel2(period_agm(bs, 0, 1).value, ref) <= 1e-6);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::branch_choice);
  }
  CHECK_THROWS_AS(es_constraint({3.0, 0.0}), Error);
}

TEST_CASE("short traces") {
  TraceOptions opt;
  opt.step = 0.0;
  const TraceResult z = trace_family({0.0, kG0}, Branch::plus, opt);
  CHECK(z.points.size() == 1);
  CHECK(z.stop_reason == "step_zero");

  opt.step = 0.05;
  opt.max_steps = 4;
  const TraceResult p = trace_family({0.0, kG0}, Branch::plus, opt);
  const TraceResult m = trace_family({0.0, -kG0}, Branch::minus, opt);
  REQUIRE(p.points.size() == 5);
  REQUIRE(m.points.size() == 5);
  CHECK(p.stop_reason == "max_steps");
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    CHECK(p.points[k].es_abs <= 1e-7);
    CHECK(std::abs(es_constraint({p.points[k].a, p.points[k].g}, Branch::plus, PeriodMethod::quadrature).re) <= 1e-7);
    CHECK(std::abs(p.points[k].a - m.points[k].a) < 1e-9);
    CHECK(std::abs(p.points[k].g + m.points[k].g) < 1e-9);
  }
  CHECK(p.points[1].a > 0.0);
  CHECK_THROWS_AS(trace_family({0.0, 0.0}, Branch::plus, opt), Error);
}

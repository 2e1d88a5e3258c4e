#include "monospec/hyperell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "monospec/errors.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;

cplx cubic(const HECurve& c, cplx x) { return x * x * x + c.a * x + c.g; }

// X^3 + aX + q = 0, Cardano then Newton polishing (only accepted when it helps)
std::array<cplx, 3> depressed_cubic_roots(double a, cplx q) {
  const cplx s = std::sqrt(q * q / 4.0 + a * a * a / 27.0);
  cplx u3 = -q / 2.0 + s;
  if (std::abs(-q / 2.0 - s) > std::abs(u3)) u3 = -q / 2.0 - s;
  const cplx u = std::pow(u3, 1.0 / 3.0);
  const cplx w(std::cos(2.0 * kPi / 3.0), std::sin(2.0 * kPi / 3.0));
  std::array<cplx, 3> r;
  cplx wk = 1.0;
  for (int k = 0; k < 3; ++k, wk *= w) {
    const cplx uk = u * wk;
    r[k] = std::abs(uk) > 0.0 ? uk - a / (3.0 * uk) : cplx(0.0);
  }
  for (auto& x : r) {
    for (int it = 0; it < 8; ++it) {
      const cplx f = x * x * x + a * x + q;
      const cplx df = 3.0 * x * x + a;
      if (std::abs(f) <= 1e-15 * (1.0 + std::abs(x) * std::abs(x) * std::abs(x)) || std::abs(df) < 1e-8) break;
      const cplx nx = x - f / df;
      if (std::abs(nx * nx * nx + a * nx + q) >= std::abs(f)) break;
      x = nx;
    }
  }
  return r;
}

BranchSet finish(const HECurve& c, std::array<cplx, 3> plus) {
  BranchSet bs;
  bs.curve = c;
  bs.plus = plus;
  for (int k = 0; k < 3; ++k) bs.minus[k] = std::conj(plus[k]);
  const auto all = bs.all();
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) dmin = std::min(dmin, std::abs(all[i] - all[j]));
  bs.min_distance = dmin;
  return bs;
}

// Gauss-Legendre rule on [-1, 1]
struct GaussRule {
  std::vector<double> x, w;
  explicit GaussRule(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5)), dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussRule& gauss16() {
  static const GaussRule rule(16);
  return rule;
}

double point_segment_distance(cplx x, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(x - a);
  const double t = std::clamp(((x - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(x - (a + t * d));
}

// contour integral with n panels per edge; false if the sign tracking was ambiguous
bool contour_sum(const HECurve& c, const CyclePath& path, Differential w, int panels, cplx y0, cplx& out) {
  const GaussRule& g = gauss16();
  cplx y_prev = y0;
  cplx acc = 0.0;
  for (std::size_t e = 0; e + 1 < path.waypoints.size(); ++e) {
    const cplx A = path.waypoints[e], B = path.waypoints[e + 1];
    const cplx hpan = (B - A) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
      const cplx mid = A + (p + 0.5) * hpan;
      for (std::size_t k = 0; k < g.x.size(); ++k) {
        const cplx X = mid + 0.5 * g.x[k] * hpan;
        const cplx q = cubic(c, X);
        cplx y = std::sqrt(q * q + 4.0);
        if (std::abs(y - y_prev) > std::abs(y + y_prev)) y = -y;
        if (std::abs(y - y_prev) >= std::abs(y_prev)) return false;
        y_prev = y;
        const cplx f = (w == Differential::dx) ? cplx(1.0) : X;
        acc += 0.5 * g.w[k] * hpan * f / y;
      }
    }
  }
  out = acc;
  return true;
}

}  // namespace

BranchSet branch_points(const HECurve& c) {
  auto r = depressed_cubic_roots(c.a, cplx(c.g, -2.0));
  std::sort(r.begin(), r.end(), [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return finish(c, r);
}

BranchSet branch_points_tracking(const HECurve& c, const std::array<cplx, 3>& previous) {
  const auto r = depressed_cubic_roots(c.a, cplx(c.g, -2.0));
  // best of the six assignments
  std::array<int, 3> perm{0, 1, 2}, best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (int k = 0; k < 3; ++k) cost += std::abs(r[perm[k]] - previous[k]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return finish(c, {r[best[0]], r[best[1]], r[best[2]]});
}

double degeneracy_indicator(const HECurve& c) { return branch_points(c).min_distance; }

double sextic_residual(const HECurve& c, cplx x) {
  const cplx q = cubic(c, x);
  return std::abs(q * q + 4.0);
}

cplx canonical_y(const BranchSet& bs, cplx x) {
  cplx y = 1.0;
  for (const cplx r : bs.plus) {
    const cplx d = x - r.real();
    if (d == 0.0) return 0.0;
    const double yk = r.imag();
    y *= d * std::sqrt(1.0 + yk * yk / (d * d));
  }
  return y;
}

CyclePath pair_cycle_path(const BranchSet& bs, cplx p, cplx q) {
  double gap = std::abs(q - p);
  for (const cplx e : bs.all())
    if (std::abs(e - p) > 1e-12 && std::abs(e - q) > 1e-12) gap = std::min(gap, point_segment_distance(e, p, q));
  const double delta = 0.25 * gap;
  const cplx dir = (q - p) / std::abs(q - p);
  const cplx nrm = cplx(0.0, 1.0) * dir;
  const cplx m = 0.5 * (p + q);
  CyclePath path;
  path.pair = {p, q};
  path.waypoints = {m + delta * nrm, q + delta * nrm, q + delta * dir, q - delta * nrm,
                    p - delta * nrm, p - delta * dir, p + delta * nrm, m + delta * nrm};
  return path;
}

cplx period_quadrature(const HECurve& c, const CyclePath& path, Differential w, const QuadratureOptions& opt) {
  if (path.waypoints.size() < 3 || std::abs(path.waypoints.front() - path.waypoints.back()) > 1e-14)
    throw Error(ErrorKind::validation, "cycle path must be closed");
  const BranchSet bs = branch_points(c);
  for (const cplx e : bs.all())
    for (std::size_t k = 0; k + 1 < path.waypoints.size(); ++k)
      if (point_segment_distance(e, path.waypoints[k], path.waypoints[k + 1]) < opt.clearance)
        throw Error(ErrorKind::path_too_close, "contour passes within clearance of a branch point");
  const cplx x0 = path.waypoints.front();
  cplx y0;
  if (opt.y_start) {
    y0 = *opt.y_start;
  } else {
    const cplx q = cubic(c, x0);
    y0 = std::sqrt(q * q + 4.0);
  }
  cplx prev;
  bool have_prev = false;
  for (int panels = 2; panels <= 4096; panels *= 2) {
    cplx cur;
    if (!contour_sum(c, path, w, panels, y0, cur)) continue;
    if (have_prev && std::abs(cur - prev) <= opt.tol) return cur;
    prev = cur;
    have_prev = true;
  }
  throw Error(ErrorKind::non_convergence, "contour quadrature did not converge");
}

std::array<cplx, 2> pair_loop_chebyshev(const BranchSet& bs, cplx p, cplx q, int nodes) {
  if (nodes % 2 == 0) ++nodes;
  std::vector<cplx> others;
  for (const cplx e : bs.all())
    if (std::abs(e - p) > 1e-12 && std::abs(e - q) > 1e-12) others.push_back(e);
  const cplx m = 0.5 * (p + q), h = 0.5 * (q - p);
  const int mid = nodes / 2;
  std::vector<cplx> X(nodes), T(nodes);
  for (int j = 0; j < nodes; ++j) {
    const double u = (j == mid) ? 0.0 : std::cos((j + 0.5) * kPi / nodes);
    X[j] = m + h * u;
    cplx t2 = -h * h;
    for (const cplx e : others) t2 *= X[j] - e;
    T[j] = std::sqrt(t2);
  }
  // Y = T sqrt(1-u^2); T(mid) = canonical Y(m), then continued outward
  if (std::abs(T[mid] - canonical_y(bs, m)) > std::abs(T[mid] + canonical_y(bs, m))) T[mid] = -T[mid];
  for (int j = mid + 1; j < nodes; ++j)
    if (std::abs(T[j] - T[j - 1]) > std::abs(T[j] + T[j - 1])) T[j] = -T[j];
  for (int j = mid - 1; j >= 0; --j)
    if (std::abs(T[j] - T[j + 1]) > std::abs(T[j] + T[j + 1])) T[j] = -T[j];
  cplx s0 = 0.0, s1 = 0.0;
  for (int j = 0; j < nodes; ++j) {
    s0 += 1.0 / T[j];
    s1 += X[j] / T[j];
  }
  const cplx f = 2.0 * h * kPi / static_cast<double>(nodes);
  return {f * s0, f * s1};
}

std::array<cplx, 2> pair_loop_quadrature(const BranchSet& bs, cplx p, cplx q, double tol) {
  int n = 33;
  auto prev = pair_loop_chebyshev(bs, p, q, n);
  for (int k = 0; k < 9; ++k) {
    n *= 3;
    const auto cur = pair_loop_chebyshev(bs, p, q, n);
    const double scale = std::max({1.0, std::abs(cur[0]), std::abs(cur[1])});
    if (std::abs(cur[0] - prev[0]) <= tol * scale && std::abs(cur[1] - prev[1]) <= tol * scale) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::non_convergence, "pair-loop quadrature did not converge");
}

const char* method_name(PeriodMethod m) {
  switch (m) {
    case PeriodMethod::agm: return "agm";
    case PeriodMethod::quadrature: return "quadrature";
    case PeriodMethod::contour: return "contour";
    default: return "auto";
  }
}

std::array<int, 2> es_combination(Branch b) {
  return b == Branch::plus ? std::array<int, 2>{1, 2} : std::array<int, 2>{2, 1};
}

Branch default_branch(const HECurve& c) { return c.g >= 0.0 ? Branch::plus : Branch::minus; }

Branch branch_for(const ESIntegers& es) {
  validate_es(es);
  if (es.n == 1 && es.m == 0) return Branch::minus;
  if (es.n == 1 && es.m == 1) return Branch::plus;
  throw Error(ErrorKind::validation, "the (a,g) family is anchored only at (n,m) = (1,0) and (1,1)");
}

namespace {

std::array<cplx, 2> loop_value(const BranchSet& bs, cplx p, cplx q, PeriodMethod m, int* iters) {
  switch (m) {
    case PeriodMethod::agm: {
      // locate the labels; period_agm works on indices
      const auto all = bs.all();
      int ip = -1, iq = -1;
      for (int k = 0; k < 6; ++k) {
        if (all[k] == p) ip = k;
        if (all[k] == q) iq = k;
      }
      AgmResult r = period_agm(bs, ip, iq);
      if (iters) *iters = std::max(*iters, r.iterations);
      return r.value;
    }
    case PeriodMethod::contour: {
      const CyclePath path = pair_cycle_path(bs, p, q);
      QuadratureOptions opt;
      opt.tol = 1e-12;
      opt.clearance = 1e-6;
      opt.y_start = canonical_y(bs, path.waypoints.front());
      return {period_quadrature(bs.curve, path, Differential::dx, opt),
              period_quadrature(bs.curve, path, Differential::xdx, opt)};
    }
    default:
      return pair_loop_quadrature(bs, p, q);
  }
}

ESValue es_with(const BranchSet& bs, Branch b, PeriodMethod m) {
  ESValue v;
  v.method = m;
  int it = 0;
  v.l01 = loop_value(bs, bs.plus[0], bs.plus[1], m, &it);
  v.l12 = loop_value(bs, bs.plus[1], bs.plus[2], m, &it);
  const auto c01 = loop_value(bs, bs.minus[0], bs.minus[1], m, &it);
  const auto c12 = loop_value(bs, bs.minus[1], bs.minus[2], m, &it);
  for (int k = 0; k < 2; ++k) {
    v.s01[k] = v.l01[k] + c01[k];
    v.s12[k] = v.l12[k] + c12[k];
  }
  v.agm_iterations = it;
  return es_recombine(v, b, 1, 1);
}

}  // namespace

ESValue es_recombine(ESValue v, Branch b, int sign01, int sign12) {
  const auto co = es_combination(b);
  const double w01 = co[0] * sign01, w12 = co[1] * sign12;
  const cplx dx = w01 * v.s01[0] + w12 * v.s12[0];
  v.re = dx.real();
  v.im = dx.imag();
  v.xdx = w01 * v.s01[1] + w12 * v.s12[1];
  return v;
}

ESValue es_constraint_roots(const BranchSet& bs, Branch b, PeriodMethod m) {
  if (bs.min_distance < 1e-10) throw Error(ErrorKind::degenerate, "coincident branch points");
  if (m != PeriodMethod::automatic) return es_with(bs, b, m);
  try {
    return es_with(bs, b, PeriodMethod::agm);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::branch_choice && e.kind() != ErrorKind::non_convergence) throw;
    return es_with(bs, b, PeriodMethod::quadrature);
  }
}

ESValue es_constraint(const HECurve& c, Branch b, PeriodMethod m) {
  return es_constraint_roots(branch_points(c), b, m);
}

ESValue es_constraint(const HECurve& c) { return es_constraint(c, default_branch(c)); }

double beta_from_period(double xdx_period) { return xdx_period / 6.0; }

double beta_from_ag(const HECurve& c, const ESIntegers& es, PeriodMethod m) {
  const ESValue v = es_constraint(c, branch_for(es), m);
  return beta_from_period(v.xdx.real());
}

}  // namespace monospec

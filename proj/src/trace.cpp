// Pseudo-arclength continuation of the zero set of the ES constraint in the (a,g) plane.
// Root labels and loop signs are carried from point to point by continuity; sorting by
// real part or recomputing the canonical sign would relabel cycles near the cusp.
#include <cmath>

#include "monospec/errors.hpp"
#include "monospec/hyperell.hpp"

namespace monospec {

namespace {

struct Tracked {
  std::array<cplx, 3> roots;
  std::array<cplx, 2> l01, l12;  // signed loops
};

struct Eval {
  ESValue v;
  Tracked next;
  double degeneracy;
};

int align(const std::array<cplx, 2>& cur, const std::array<cplx, 2>& ref) {
  return std::abs(cur[0] - ref[0]) + std::abs(cur[1] - ref[1]) <= std::abs(cur[0] + ref[0]) + std::abs(cur[1] + ref[1])
             ? 1
             : -1;
}

Eval evaluate(const HECurve& c, Branch b, const Tracked& ref, PeriodMethod m) {
  const BranchSet bs = branch_points_tracking(c, ref.roots);
  ESValue v = es_constraint_roots(bs, b, m);
  const int s01 = align(v.l01, ref.l01), s12 = align(v.l12, ref.l12);
  Eval e;
  e.v = es_recombine(v, b, s01, s12);
  e.next.roots = bs.plus;
  e.next.l01 = {double(s01) * v.l01[0], double(s01) * v.l01[1]};
  e.next.l12 = {double(s12) * v.l12[0], double(s12) * v.l12[1]};
  e.degeneracy = bs.min_distance;
  return e;
}

struct Grad {
  double f, fa, fg;
  PeriodMethod method;
};

Grad gradient(double a, double g, Branch b, const Tracked& ref) {
  const double h = 1e-6;
  const Eval e0 = evaluate({a, g}, b, ref, PeriodMethod::automatic);
  const double fa = (evaluate({a + h, g}, b, ref, e0.v.method).v.re - evaluate({a - h, g}, b, ref, e0.v.method).v.re) / (2 * h);
  const double fg = (evaluate({a, g + h}, b, ref, e0.v.method).v.re - evaluate({a, g - h}, b, ref, e0.v.method).v.re) / (2 * h);
  return {e0.v.re, fa, fg, e0.v.method};
}

}  // namespace

TraceResult trace_family(const HECurve& start, Branch b, const TraceOptions& opt) {
  TraceResult out;
  const BranchSet bs0 = branch_points(start);
  ESValue v0 = es_constraint_roots(bs0, b, PeriodMethod::quadrature);
  if (std::abs(v0.re) > opt.accept_tol)
    throw Error(ErrorKind::validation, "trace start is not on the constraint locus (|es| = " + std::to_string(std::abs(v0.re)) + ")");
  Tracked tr{bs0.plus, v0.l01, v0.l12};
  out.points.push_back({start.a, start.g, std::abs(v0.re), bs0.min_distance, PeriodMethod::quadrature});
  if (opt.step <= 0.0 || opt.max_steps <= 0) {
    out.stop_reason = "step_zero";
    return out;
  }

  double a = start.a, g = start.g;
  // initial direction: increasing a
  double ta = 1.0, tg = 0.0;
  double h = opt.step;
  for (int step = 0; step < opt.max_steps; ++step) {
    const Grad gr = gradient(a, g, b, tr);
    double na = -gr.fg, ng = gr.fa;
    const double nn = std::hypot(na, ng);
    if (!(nn > 0.0)) {
      out.stop_reason = "corrector";
      return out;
    }
    na /= nn;
    ng /= nn;
    if (na * ta + ng * tg < 0.0) {
      na = -na;
      ng = -ng;
    }
    ta = na;
    tg = ng;

    const double deg_here = out.points.back().degeneracy;
    double hh = h;
    if (deg_here < 1e-2)
      while (hh > deg_here) hh *= 0.5;

    bool accepted = false;
    while (!accepted) {
      if (hh < opt.min_step) {
        out.stop_reason = deg_here < 1e-2 ? "cusp" : "corrector";
        return out;
      }
      double ya = a + hh * ta, yg = g + hh * tg;
      Tracked ref = tr;
      bool ok = false;
      PeriodMethod used = PeriodMethod::agm;
      try {
        for (int it = 0; it < 12; ++it) {
          const Grad q = gradient(ya, yg, b, ref);
          used = q.method;
          const double r2 = (ya - a) * ta + (yg - g) * tg - hh;
          if (std::abs(q.f) <= 1e-11 && std::abs(r2) <= 1e-12) {
            ok = true;
            break;
          }
          const double det = q.fa * tg - q.fg * ta;
          if (!(std::abs(det) > 0.0)) break;
          const double da = (q.f * tg - q.fg * r2) / det;
          const double dg = (q.fa * r2 - q.f * ta) / det;
          ya -= da;
          yg -= dg;
          if (std::hypot(da, dg) > 4.0 * hh) break;
        }
        if (ok) {
          const Eval check = evaluate({ya, yg}, b, tr, PeriodMethod::quadrature);
          if (std::abs(check.v.re) <= opt.accept_tol && std::abs(check.v.im) <= opt.accept_tol) {
            a = ya;
            g = yg;
            tr = check.next;
            out.points.push_back({a, g, std::abs(check.v.re), check.degeneracy, used});
            accepted = true;
          }
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::validation) throw;
      }
      if (!accepted) hh *= 0.5;
    }
    if (out.points.back().degeneracy < opt.degeneracy_stop) {
      out.stop_reason = "degeneracy";
      return out;
    }
  }
  out.stop_reason = "max_steps";
  return out;
}

}  // namespace monospec

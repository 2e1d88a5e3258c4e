#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monospec/curvefam.hpp"
#include "monospec/specfun.hpp"

namespace monospec {

// Y^2 = (X^3 + a X + g)^2 + 4
struct HECurve {
  double a = 0.0;
  double g = 0.0;
};

struct BranchSet {
  HECurve curve;
  std::array<cplx, 3> plus;   // X^3 + aX + g = 2i, sorted by real part
  std::array<cplx, 3> minus;  // minus[k] = conj(plus[k])
  double min_distance = 0.0;
  std::vector<cplx> all() const { return {plus[0], plus[1], plus[2], minus[0], minus[1], minus[2]}; }
};

BranchSet branch_points(const HECurve& c);
// same roots, labelled to follow `previous` (used by the family trace)
BranchSet branch_points_tracking(const HECurve& c, const std::array<cplx, 3>& previous);
double degeneracy_indicator(const HECurve& c);
double sextic_residual(const HECurve& c, cplx x);

enum class Differential { dx, xdx };

// Y = prod_k (X - x_k) sqrt(1 + y_k^2/(X - x_k)^2), r_k = x_k + i y_k: single valued off
// the three vertical cuts [r_k, conj r_k], ~ X^3 at infinity.
cplx canonical_y(const BranchSet& bs, cplx x);

struct CyclePath {
  std::vector<cplx> waypoints;  // closed: front == back
  std::pair<cplx, cplx> pair;   // branch points it encircles
};

// stadium around the segment p -> q starting beside its midpoint, heading for q first
CyclePath pair_cycle_path(const BranchSet& bs, cplx p, cplx q);

struct QuadratureOptions {
  double tol = 1e-10;
  double clearance = 1e-3;
  std::optional<cplx> y_start;  // default: principal sqrt at the first waypoint
};

cplx period_quadrature(const HECurve& c, const CyclePath& path, Differential w, const QuadratureOptions& opt = {});

// 2 * int_p^q (dX/Y, X dX/Y) on the straight segment, Y continued from canonical_y at the
// midpoint. Chebyshev-Gauss nodes absorb the endpoint square roots.
std::array<cplx, 2> pair_loop_quadrature(const BranchSet& bs, cplx p, cplx q, double tol = 1e-13);
std::array<cplx, 2> pair_loop_chebyshev(const BranchSet& bs, cplx p, cplx q, int nodes);

struct AgmResult {
  std::array<cplx, 2> value;  // (dX/Y, X dX/Y)
  int iterations = 0;
  double selection_distance = 0.0;  // distance of the chosen limit to the coarse estimate
};

// Richelot iteration for the loop around plus[i], plus[j]; same sign convention as
// pair_loop_quadrature.
AgmResult period_agm(const BranchSet& bs, int i, int j);
AgmResult period_agm(const HECurve& c, int i, int j);

enum class Branch { plus, minus };
enum class PeriodMethod { automatic, agm, quadrature, contour };

const char* method_name(PeriodMethod m);

// the designated cycle is c = gamma + conj(gamma) with
//   gamma = L01 + 2 L12  (plus branch)   or   2 L01 + L12  (minus branch)
// where Lij is the loop around plus[i], plus[j]
std::array<int, 2> es_combination(Branch b);
Branch default_branch(const HECurve& c);

struct ESValue {
  double re = 0.0;
  double im = 0.0;
  cplx xdx = 0.0;  // integral of X dX/Y over the same cycle
  PeriodMethod method = PeriodMethod::automatic;
  int agm_iterations = 0;
  // loop around plus[i],plus[j] and the same loop plus its conjugate, each as (dX/Y, X dX/Y);
  // the trace flips signs of these by continuity
  std::array<cplx, 2> l01{}, l12{}, s01{}, s12{};
};

// recombine with loop signs (+1/-1)
ESValue es_recombine(ESValue v, Branch b, int sign01, int sign12);

ESValue es_constraint(const HECurve& c, Branch b, PeriodMethod m = PeriodMethod::automatic);
ESValue es_constraint(const HECurve& c);
// same, on explicitly labelled roots (trace)
ESValue es_constraint_roots(const BranchSet& bs, Branch b, PeriodMethod m);

Branch branch_for(const ESIntegers& es);
// beta = (1/6) * integral of X dX/Y over the designated cycle
double beta_from_period(double xdx_period);
double beta_from_ag(const HECurve& c, const ESIntegers& es, PeriodMethod m = PeriodMethod::automatic);

struct TracePoint {
  double a = 0.0, g = 0.0;
  double es_abs = 0.0;      // |es_constraint|, quadrature re-check
  double degeneracy = 0.0;
  PeriodMethod method = PeriodMethod::agm;
};

struct TraceResult {
  std::vector<TracePoint> points;
  std::string stop_reason;  // max_steps, degeneracy, step_zero, corrector
};

struct TraceOptions {
  double step = 0.02;
  int max_steps = 500;
  double accept_tol = 1e-7;
  double degeneracy_stop = 1e-4;
  double min_step = 1e-7;
};

TraceResult trace_family(const HECurve& start, Branch b, const TraceOptions& opt);

}  // namespace monospec

// Genus-2 Richelot AGM for the loop integrals of dX/Y and X dX/Y.
//
// Y^2 = lead * G1 G2 G3 with G1 = (x-u)(x-v). One Richelot step maps the three
// quadratics to H_i = (G_j' G_k - G_j G_k') / Delta. The loop around the roots of
// G1 pulls back to 2/Delta times a loop on the new curve whose branch pair is one
// root of H2 with one root of H3; that pair becomes the new G1. Once u and v
// (nearly) coincide the loop is a residue.
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "monospec/errors.hpp"
#include "monospec/hyperell.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;

struct Quad {
  cplx c2, c1, c0;  // c2 x^2 + c1 x + c0
};

using Pair = std::pair<cplx, cplx>;

Quad from_roots(cplx lead, cplx r1, cplx r2) { return {lead, -lead * (r1 + r2), lead * r1 * r2}; }

std::pair<cplx, cplx> quad_roots(const Quad& q) {
  const cplx disc = std::sqrt(q.c1 * q.c1 - 4.0 * q.c2 * q.c0);
  const cplx s = (std::abs(-q.c1 + disc) >= std::abs(-q.c1 - disc)) ? -q.c1 + disc : -q.c1 - disc;
  const cplx r1 = s / (2.0 * q.c2);
  const cplx r2 = (std::abs(s) > 0.0) ? 2.0 * q.c0 / s : r1;
  return {r1, r2};
}

// G_j' G_k - G_j G_k'
Quad bracket(const Quad& a, const Quad& b) {
  return {a.c2 * b.c1 - a.c1 * b.c2, 2.0 * (a.c2 * b.c0 - a.c0 * b.c2), a.c1 * b.c0 - a.c0 * b.c1};
}

cplx det3(const std::array<Quad, 3>& g) {
  auto row = [&](int i) { return std::array<cplx, 3>{g[i].c0, g[i].c1, g[i].c2}; };
  const auto a = row(0), b = row(1), c = row(2);
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

struct State {
  std::array<Pair, 3> pairs;
  cplx lead = 1.0;
  cplx scale = 1.0;
};

struct Choice {
  int ia, ib, completion;
};

// completion < 0: pick the crosswise completion with the smaller total distance
State richelot_step(const State& s, std::optional<Choice> choice) {
  std::array<Quad, 3> G = {from_roots(s.lead, s.pairs[0].first, s.pairs[0].second),
                           from_roots(1.0, s.pairs[1].first, s.pairs[1].second),
                           from_roots(1.0, s.pairs[2].first, s.pairs[2].second)};
  const cplx delta = det3(G);
  if (!(std::abs(delta) > 1e-300)) throw Error(ErrorKind::branch_choice, "AGM step with vanishing determinant");
  std::array<Quad, 3> H;
  std::array<std::array<cplx, 2>, 3> R;
  cplx lead = 1.0;
  for (int i = 0; i < 3; ++i) {
    const Quad b = bracket(G[(i + 1) % 3], G[(i + 2) % 3]);
    H[i] = {b.c2 / delta, b.c1 / delta, b.c0 / delta};
    if (std::abs(H[i].c2) < 1e-300) throw Error(ErrorKind::branch_choice, "AGM step lost a branch point");
    const auto r = quad_roots(H[i]);
    R[i] = {r.first, r.second};
    lead *= H[i].c2;
  }
  int ia = 0, ib = 0;
  if (choice) {
    ia = choice->ia;
    ib = choice->ib;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (std::abs(R[1][i] - R[2][j]) < best) {
          best = std::abs(R[1][i] - R[2][j]);
          ia = i;
          ib = j;
        }
  }
  const cplx j2 = R[1][1 - ia], l2 = R[2][1 - ib], k1 = R[0][0], k2 = R[0][1];
  const std::array<Pair, 2> c1 = {Pair{j2, k1}, Pair{l2, k2}};
  const std::array<Pair, 2> c2 = {Pair{j2, k2}, Pair{l2, k1}};
  int comp = choice ? choice->completion : -1;
  if (comp < 0) comp = (std::abs(j2 - k1) + std::abs(l2 - k2) < std::abs(j2 - k2) + std::abs(l2 - k1)) ? 0 : 1;
  const auto& rest = comp == 0 ? c1 : c2;
  State n;
  n.pairs = {Pair{R[1][ia], R[2][ib]}, rest[0], rest[1]};
  n.lead = lead;
  n.scale = s.scale * 2.0 / delta;
  return n;
}

struct Limit {
  std::array<cplx, 2> value;
  int iterations;
};

Limit run(State s, std::optional<Choice> first) {
  double prev_sep = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 60; ++n) {
    const cplx u = s.pairs[0].first, v = s.pairs[0].second;
    const std::array<cplx, 4> others = {s.pairs[1].first, s.pairs[1].second, s.pairs[2].first, s.pairs[2].second};
    double spread = 0.0;
    for (const cplx e : others) spread = std::max(spread, std::abs(e - u));
    const double sep = std::abs(u - v) / spread;
    if (sep < 1e-8) {
      const cplx m = 0.5 * (u + v);
      cplx q = s.lead;
      for (const cplx e : others) q *= m - e;
      const cplx base = cplx(0.0, 2.0 * kPi) / std::sqrt(q);
      return {{s.scale * base, s.scale * base * m}, n};
    }
    if (n >= 4 && sep > prev_sep) throw Error(ErrorKind::branch_choice, "AGM iterates stopped contracting");
    prev_sep = sep;
    s = richelot_step(s, n == 0 ? first : std::nullopt);
  }
  throw Error(ErrorKind::branch_choice, "AGM did not converge in 60 steps");
}

double rel_dist(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b) {
  const double scale = std::max(std::abs(b[0]), std::abs(b[1]));
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])) / scale;
}

}  // namespace

AgmResult period_agm(const BranchSet& bs, int i, int j) {
  const auto all = bs.all();
  if (i < 0 || j < 0 || i > 5 || j > 5 || i == j) throw Error(ErrorKind::validation, "period_agm: bad pair labels");
  if (bs.min_distance < 1e-10) throw Error(ErrorKind::degenerate, "period_agm: coincident branch points");
  // second pair: the conjugates of the first; third: whatever is left
  auto conj_index = [](int k) { return k < 3 ? k + 3 : k - 3; };
  const int ci = conj_index(i), cj = conj_index(j);
  std::vector<int> rest;
  for (int k = 0; k < 6; ++k)
    if (k != i && k != j && k != ci && k != cj) rest.push_back(k);
  State s0;
  if (rest.size() == 2) {
    s0.pairs = {Pair{all[i], all[j]}, Pair{all[ci], all[cj]}, Pair{all[rest[0]], all[rest[1]]}};
  } else {
    // i, j conjugate to each other: pair the remaining four as two conjugate pairs
    std::vector<int> left;
    for (int k = 0; k < 6; ++k)
      if (k != i && k != j) left.push_back(k);
    s0.pairs = {Pair{all[i], all[j]}, Pair{all[left[0]], all[conj_index(left[0])]},
                Pair{all[left[1]], all[conj_index(left[1])]}};
  }

  // coarse estimate with the same sign convention decides among the step-0 candidates
  const auto coarse = pair_loop_chebyshev(bs, all[i], all[j], 17);
  std::vector<AgmResult> cands;
  for (int ia = 0; ia < 2; ++ia)
    for (int ib = 0; ib < 2; ++ib)
      for (int comp = 0; comp < 2; ++comp) {
        Limit lim;
        try {
          lim = run(s0, Choice{ia, ib, comp});
        } catch (const Error&) {
          continue;
        }
        for (double sg : {1.0, -1.0}) {
          const std::array<cplx, 2> v = {sg * lim.value[0], sg * lim.value[1]};
          cands.push_back({v, lim.iterations, rel_dist(v, coarse)});
        }
      }
  if (cands.empty()) throw Error(ErrorKind::branch_choice, "every AGM candidate failed to converge");
  std::sort(cands.begin(), cands.end(),
            [](const AgmResult& x, const AgmResult& y) { return x.selection_distance < y.selection_distance; });
  const AgmResult& best = cands.front();
  const double best_d = best.selection_distance;
  double runner_up = std::numeric_limits<double>::infinity();
  for (const auto& c : cands)
    if (rel_dist(c.value, best.value) > 1e-6) {
      runner_up = c.selection_distance;
      break;
    }
  if (!(best_d < 0.1)) throw Error(ErrorKind::branch_choice, "no AGM candidate matches the coarse period estimate");
  if (runner_up < 4.0 * best_d) throw Error(ErrorKind::branch_choice, "ambiguous AGM branch selection");
  return best;
}

AgmResult period_agm(const HECurve& c, int i, int j) { return period_agm(branch_points(c), i, j); }

}  // namespace monospec

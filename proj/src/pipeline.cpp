#include "monospec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <regex>
#include <sstream>

#include "monospec/errors.hpp"
#include "monospec/parallel.hpp"
#include "monospec/specfun.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

H3Report finish_report(H3Report r) {
  r.zero_count = static_cast<int>(r.interior_zeros.size());
  r.verdict = r.zero_count == 0 ? "monopole" : "rejected";
  return r;
}

}  // namespace

H3Report h3_report_reduced(const ESIntegers& es, int samples) {
  const ZeroScan scan = scan_reduced_h3(es, samples);
  H3Report r;
  r.es = es;
  r.method = "reduced";
  r.samples = samples;
  r.interior_zeros = scan.interior_zeros;
  r.boundary_zeros = scan.boundary_zeros;
  r.min_abs_theta = scan.min_abs;
  return finish_report(r);
}

H3Report h3_report_genus4(const ESIntegers& es, int samples, const CVec& K, double tol) {
  validate_es(es);
  if (K.size() != 4) throw Error(ErrorKind::validation, "K must have 4 entries");
  if (samples < 8) throw Error(ErrorKind::validation, "samples must be at least 8");
  const CMat tau = tau_from_integers(es);
  const CVec U = winding_vector(es, tau);
  std::vector<double> s(samples);
  for (int k = 0; k < samples; ++k) s[k] = 2.0 * k / (samples - 1);
  const std::vector<cplx> vals = riemann_theta_along_line(K, U, s, tau, tol);
  std::vector<double> av(samples);
  for (int k = 0; k < samples; ++k) av[k] = std::abs(vals[k]);
  const ThetaEvaluator th(tau, tol);
  auto f = [&](double x) { return std::abs(th(K + std::clamp(x, 0.0, 2.0) * U)); };
  double median = 0.0;
  H3Report r;
  r.es = es;
  r.method = "genus4";
  r.samples = samples;
  r.interior_zeros = find_abs_zeros(s, av, f, 1e-9, &median);
  if (av.front() < 1e-9 * median) r.boundary_zeros.push_back(0.0);
  if (av.back() < 1e-9 * median) r.boundary_zeros.push_back(2.0);
  r.min_abs_theta = *std::min_element(av.begin() + 1, av.end() - 1);
  return finish_report(r);
}

CandidateReport candidate_report(const ESIntegers& es, const RunConfig& cfg, bool genus4,
                                 const std::optional<CVec>& K) {
  validate_es(es);
  CandidateReport c;
  c.es = es;
  c.t = solve_t(es);
  const BCurveParams bc = curve_parameters(c.t, es);
  c.b = bc.b;
  c.chi = bc.chi;
  c.tau_hat = tau_from_integers(es);
  c.U = winding_vector(es, c.tau_hat);
  c.h3 = h3_report_reduced(es, cfg.samples);
  if (genus4) {
    if (K)
      c.h3_genus4 = h3_report_genus4(es, cfg.samples, *K, cfg.tol);
    else
      c.notice = "K not supplied: genus4 scan skipped, reduced method only";
  }
  c.conjecture_expected = static_cast<int>(2 * (std::labs(es.n) - 1));
  return c;
}

double tetra_chi_closed_form() {
  return -(1.0 / 6.0) * gamma_fn(1.0 / 6.0) * gamma_fn(1.0 / 3.0) / (std::pow(2.0, 1.0 / 6.0) * std::sqrt(kPi));
}

std::array<TetraCheck, 2> tetra_verify(const RunConfig& cfg, bool genus4, const std::optional<CVec>& K) {
  std::array<TetraCheck, 2> out;
  const ESIntegers pairs[2] = {{1, 0}, {1, 1}};
  const double sgn[2] = {1.0, -1.0};
  for (int k = 0; k < 2; ++k) {
    TetraCheck& tc = out[k];
    tc.report = candidate_report(pairs[k], cfg, genus4, K);
    tc.t_expected = 0.5 + sgn[k] * 5.0 * kSqrt3 / 18.0;
    tc.b_expected = -sgn[k] * 5.0 * std::sqrt(2.0);
    // both tetrahedral curves share chi; only t and b mirror
    tc.chi_expected = tetra_chi_closed_form();
    tc.t_ok = std::abs(tc.report.t - tc.t_expected) <= 1e-10;
    tc.b_ok = std::abs(tc.report.b - tc.b_expected) <= 1e-10;
    tc.chi_ok = std::abs(tc.report.chi - tc.chi_expected) <= 1e-9;
    tc.h3_ok = tc.report.h3.zero_count == 0 && (!tc.report.h3_genus4 || tc.report.h3_genus4->zero_count == 0);
  }
  return out;
}

std::vector<cplx> identity_T_samples() {
  // 20 fixed points, Im T in [0.5, 5]
  std::vector<cplx> t;
  for (int k = 0; k < 20; ++k) {
    const double im = 0.5 + 4.5 * k / 19.0;
    const double re = -0.5 + std::fmod(0.618033988749895 * (k + 1), 1.0);
    t.emplace_back(re, im);
  }
  t[0] = cplx(0.0, kSqrt3);
  return t;
}

std::array<std::array<cplx, 2>, 5> fay_accola_points() {
  return {{{cplx(0.3), cplx(0.0, 0.1)},
           {cplx(0.05, -0.1), cplx(-0.2)},
           {cplx(0.4, 0.02), cplx(0.1, 0.05)},
           {cplx(0.0), cplx(0.0)},
           {cplx(0.12, 0.03), cplx(-0.15, 0.02)}}};
}

IdentityReport identities_report(const RunConfig& cfg) {
  IdentityReport r;
  r.T_samples = identity_T_samples();
  r.identity2_printed_min = INFINITY;
  for (const cplx T : r.T_samples) {
    r.identity1_max = std::max(r.identity1_max, theta_constant_identity_1(T));
    r.identity2_max = std::max(r.identity2_max, theta_constant_identity_2(T));
    r.identity2_printed_min = std::min(r.identity2_printed_min, theta_constant_identity_2_both_factors(T));
  }
  r.ramanujan_half = std::abs(ramanujan_residual(0.5 - 5.0 * kSqrt3 / 18.0, 0.5));
  for (const double y : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double x = ramanujan_partner(y);
    const double rel = std::abs(f_ratio(1.0 - x) - 2.0 * f_ratio(1.0 - y));
    r.ramanujan_pairs.push_back({y, x, rel});
    r.ramanujan_pairs_max = std::max(r.ramanujan_pairs_max, rel);
  }
  const CyclicTau4 ct = monopole_cyclic_fixture();
  const auto pts = fay_accola_points();
  std::array<cplx, 5> k{}, kb{};
  parallel_for(5, [&](std::size_t i) {
    k[i] = fay_accola_ratio(pts[i][0], pts[i][1], ct, std::min(cfg.tol, 1e-12));
    kb[i] = fay_accola_ratio_bruteforce(pts[i][0], pts[i][1], ct, 14);
  });
  r.fay_accola_kappa = k[0];
  for (int i = 0; i < 5; ++i) {
    r.fay_accola_spread = std::max(r.fay_accola_spread, std::abs(k[i] - k[0]) / std::abs(k[0]));
    r.fay_accola_bruteforce_max = std::max(r.fay_accola_bruteforce_max, std::abs(k[i] - kb[i]) / std::abs(k[i]));
  }
  return r;
}

AgmCheck agm_check(const HECurve& c) {
  AgmCheck out;
  out.curve = c;
  out.roots = branch_points(c);
  for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
    AgmCheck::Loop l{i, j, {}, {}, 0, 0.0};
    const AgmResult a = period_agm(out.roots, i, j);
    l.agm = a.value;
    l.iterations = a.iterations;
    l.quadrature = pair_loop_quadrature(out.roots, out.roots.plus[i], out.roots.plus[j]);
    const double scale = std::max(std::abs(l.quadrature[0]), std::abs(l.quadrature[1]));
    l.rel_diff = std::max(std::abs(l.agm[0] - l.quadrature[0]), std::abs(l.agm[1] - l.quadrature[1])) / scale;
    out.loops.push_back(l);
  }
  const Branch b = default_branch(c);
  out.es_agm = es_constraint(c, b, PeriodMethod::agm);
  out.es_quadrature = es_constraint(c, b, PeriodMethod::quadrature);
  return out;
}

std::vector<Fig5Point> fig5_branches(int max_denominator, double r_max, int samples) {
  if (max_denominator < 1 || samples < 8 || !(r_max > 0.0)) throw Error(ErrorKind::validation, "fig5: bad grid");
  std::vector<std::pair<long, long>> ratios;
  for (long q = 1; q <= max_denominator; ++q)
    for (long p = 1; p <= static_cast<long>(r_max * q); ++p)
      if (std::gcd(p, q) == 1) ratios.emplace_back(p, q);
  std::sort(ratios.begin(), ratios.end(),
            [](auto x, auto y) { return x.first * y.second < y.first * x.second; });
  std::vector<std::vector<Fig5Point>> per(ratios.size());
  parallel_for(ratios.size(), [&](std::size_t idx) {
    const auto [p, q] = ratios[idx];
    const cplx T(0.0, 2.0 * kSqrt3 * static_cast<double>(p) / static_cast<double>(q));
    std::vector<double> y(samples);
    for (int k = 0; k < samples; ++k) y[k] = 2.0 * k / (samples - 1);
    std::array<std::vector<double>, 3> av;
    for (auto& v : av) v.resize(samples);
    for (int k = 0; k < samples; ++k) {
      const auto r = h3_residuals_at(T, y[k]);
      for (int e = 0; e < 3; ++e) av[e][k] = std::abs(r[e]);
    }
    const int eps[3] = {0, 1, -1};
    for (int e = 0; e < 3; ++e) {
      auto f = [&, e](double x) { return std::abs(h3_residuals_at(T, std::clamp(x, 0.0, 2.0))[e]); };
      for (const double z : find_abs_zeros(y, av[e], f, 1e-9)) per[idx].push_back({p, q, T.imag(), eps[e], z});
    }
  });
  std::vector<Fig5Point> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

cplx parse_complex(const std::string& token) {
  // 1.5, -2i, 0.5+1.25i, 1e-3-4E+2i, i, -i
  static const std::regex re(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?\s*$)");
  static const std::regex pure_im(R"(^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i\s*$)");
  std::smatch m;
  if (std::regex_match(token, m, pure_im)) {
    const double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -v : v};
  }
  if (!std::regex_match(token, m, re) || token.find_first_not_of(" \t") == std::string::npos)
    throw Error(ErrorKind::parse, "cannot parse complex number '" + token + "'");
  const double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
  double im_part = 0.0;
  if (m[2].matched) {
    im_part = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (m[2].str() == "-") im_part = -im_part;
  }
  return {re_part, im_part};
}

namespace {

std::vector<std::vector<cplx>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::vector<std::vector<cplx>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::vector<cplx> row;
    std::string tok;
    while (ss >> tok) {
      try {
        row.push_back(parse_complex(tok));
      } catch (const Error& e) {
        throw Error(ErrorKind::parse, path + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

CMat read_tau_file(const std::string& path) {
  const auto rows = read_rows(path);
  const Eigen::Index g = static_cast<Eigen::Index>(rows.size());
  if (g == 0) throw Error(ErrorKind::parse, path + ": empty period matrix");
  CMat tau(g, g);
  for (Eigen::Index i = 0; i < g; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != g)
      throw Error(ErrorKind::invalid_matrix, path + ": row " + std::to_string(i + 1) + " has " +
                                                 std::to_string(rows[i].size()) + " entries, expected " +
                                                 std::to_string(g) + " (tau must be square)");
    for (Eigen::Index j = 0; j < g; ++j) tau(i, j) = rows[i][j];
  }
  return tau;
}

CVec read_complex_vector_file(const std::string& path) {
  const auto rows = read_rows(path);
  std::vector<cplx> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  CVec v(static_cast<Eigen::Index>(flat.size()));
  for (std::size_t i = 0; i < flat.size(); ++i) v[static_cast<Eigen::Index>(i)] = flat[i];
  return v;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, const TraceResult& tr) {
  os << "a,g,es_abs,degeneracy,method\n";
  for (const auto& p : tr.points)
    os << fmt17(p.a) << ',' << fmt17(p.g) << ',' << fmt17(p.es_abs) << ',' << fmt17(p.degeneracy) << ','
       << method_name(p.method) << '\n';
}

void write_fig5_csv(std::ostream& os, const std::vector<Fig5Point>& pts) {
  os << "p,q,ratio,T_im,eps,y\n";
  for (const auto& p : pts)
    os << p.p << ',' << p.q << ',' << fmt17(static_cast<double>(p.p) / p.q) << ',' << fmt17(p.T_im) << ','
       << p.eps << ',' << fmt17(p.y) << '\n';
}

}  // namespace monospec

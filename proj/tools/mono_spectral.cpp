// mono-spectral: command-line front end.
//
// exit codes: 0 ok, 2 validation / assertion failure, 3 numerical non-convergence.
// Failures print one JSON object on stderr.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>

#include "monospec/errors.hpp"
#include "monospec/parallel.hpp"
#include "monospec/pipeline.hpp"

using namespace monospec;
using json = nlohmann::json;

namespace {

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json cvec_json(const CVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cjson(v[i]));
  return a;
}

json cmat_json(const CMat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(cvec_json(m.row(i).transpose()));
  return a;
}

json h3_json(const H3Report& r) {
  return {{"n", r.es.n},
          {"m", r.es.m},
          {"method", r.method},
          {"samples", r.samples},
          {"interior_zeros", r.interior_zeros},
          {"boundary_zeros", r.boundary_zeros},
          {"zero_count", r.zero_count},
          {"verdict", r.verdict},
          {"min_abs_theta", r.min_abs_theta},
          {"zero_accept_rel_median", 1e-9}};
}

json candidate_json(const CandidateReport& c) {
  json j = {{"n", c.es.n},
            {"m", c.es.m},
            {"t", c.t},
            {"b", c.b},
            {"chi", c.chi},
            {"tau_hat", cmat_json(c.tau_hat)},
            {"U", cvec_json(c.U)},
            {"h3", h3_json(c.h3)},
            {"conjecture_expected", c.conjecture_expected}};
  if (c.h3_genus4) j["h3_genus4"] = h3_json(*c.h3_genus4);
  if (!c.notice.empty()) j["notice"] = c.notice;
  return j;
}

void fail_json(const std::string& kind, const std::string& msg, int code, json extra = json::object()) {
  json j = {{"error", kind}, {"message", msg}, {"exit_code", code}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::cerr << j.dump() << '\n';
}

// key=value file, read with CLI11's INI reader; values only fill options left unset on the command line
std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> out;
  if (path.empty()) return out;
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    if (item.inputs.empty()) continue;
    std::string key = item.name;
    for (auto& ch : key)
      if (ch == '_') ch = '-';
    out[key] = item.inputs.front();
  }
  return out;
}

template <class T>
void apply_config(const std::map<std::string, std::string>& cfg, CLI::Option* opt, const std::string& key, T& value) {
  if (opt && opt->count() > 0) return;
  if (auto it = cfg.find(key); it != cfg.end()) {
    try {
      if constexpr (std::is_same_v<T, int>)
        value = std::stoi(it->second);
      else
        value = std::stod(it->second);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, "config: bad value for '" + key + "': " + it->second);
    }
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::validation, "cannot write " + path);
  return os;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-curve checks for charge-3 monopoles: theta functions, H1-H3, (a,g) family."};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file (tol, samples, step, max_steps); flags override it")
      ->check(CLI::ExistingFile);

  RunConfig rc;
  std::optional<CVec> K;
  std::string method = "reduced", k_path;

  auto* tetra = app.add_subcommand("tetra-verify", "Check the two tetrahedral curves (1,0) and (1,1) end to end");
  tetra->fallthrough();
  auto* tetra_tol = tetra->add_option("--tol", rc.tol, "theta tolerance (default 1e-10)");
  auto* tetra_samples = tetra->add_option("--samples", rc.samples, "s-grid size (default 2048)");
  tetra->add_option("--method", method, "reduced|genus4")->check(CLI::IsMember({"reduced", "genus4"}));
  tetra->add_option("--K", k_path, "vector of Riemann constants, 4 complex numbers")->check(CLI::ExistingFile);

  ESIntegers es;
  std::string csv_path, fig5_path;
  auto* h3 = app.add_subcommand(
      "h3-scan",
      "Count zeros of the reduced H3 residuals on s in (0,2); mirrors Fig. 2 (n,m)=(1,0) and Fig. 3 (4,-1). "
      "--fig5 writes the three y(T) branches of Fig. 5");
  h3->fallthrough();
  h3->add_option("--n", es.n, "integer n")->required();
  h3->add_option("--m", es.m, "integer m")->required();
  auto* h3_samples = h3->add_option("--samples", rc.samples, "s-grid size (default 2048)");
  auto* h3_tol = h3->add_option("--tol", rc.tol, "theta tolerance for the genus4 method (default 1e-10)");
  h3->add_option("--method", method, "reduced|genus4")->check(CLI::IsMember({"reduced", "genus4"}));
  h3->add_option("--K", k_path, "vector of Riemann constants, 4 complex numbers")->check(CLI::ExistingFile);
  h3->add_option("--csv", csv_path, "write s,|r0|,|r+|,|r-| to this CSV");
  h3->add_option("--fig5", fig5_path, "write y(T) solution points of the three residual equations");

  std::string branch = "plus", out_path;
  auto* trace = app.add_subcommand(
      "trace", "Trace the (a,g) solution curve of the ES constraint from (0,+-5 sqrt 2) towards the cusp (3,0); mirrors Fig. 6");
  trace->fallthrough();
  trace->add_option("--branch", branch, "plus|minus")->check(CLI::IsMember({"plus", "minus"}));
  auto* tr_step = trace->add_option("--step", rc.step, "arclength step (default 0.02)");
  auto* tr_max = trace->add_option("--max-steps", rc.max_steps, "step limit (default 500)");
  trace->add_option("--out", out_path, "CSV output: a,g,es_abs,degeneracy,method")->required();

  auto* idents = app.add_subcommand("identities", "Theta-constant identities, Ramanujan pairs, Fay-Accola constancy");
  idents->fallthrough();
  auto* id_tol = idents->add_option("--tol", rc.tol, "theta tolerance (default 1e-10)");

  std::string tau_path, z_path;
  auto* theta = app.add_subcommand("theta-eval", "Evaluate the Riemann theta function from files");
  theta->fallthrough();
  theta->add_option("--tau", tau_path, "period matrix, one row per line, entries re+imi")->required();
  theta->add_option("--z", z_path, "one complex per line")->required();
  auto* th_tol = theta->add_option("--tol", rc.tol, "absolute tolerance (default 1e-10)");

  double a = 0.0, g = 0.0;
  auto* agm = app.add_subcommand("agm-check", "Compare the genus-2 AGM with quadrature at one (a,g)");
  agm->fallthrough();
  agm->add_option("--a", a, "real a")->required();
  agm->add_option("--g", g, "real g")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0) fail_json("usage", e.what(), 2);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto cfg = read_config(config_path);
    auto given = [](std::initializer_list<CLI::Option*> os) {
      for (auto* o : os)
        if (o->count() > 0) return o;
      return static_cast<CLI::Option*>(nullptr);
    };
    apply_config(cfg, given({tetra_tol, h3_tol, id_tol, th_tol}), "tol", rc.tol);
    apply_config(cfg, given({tetra_samples, h3_samples}), "samples", rc.samples);
    apply_config(cfg, tr_step, "step", rc.step);
    apply_config(cfg, tr_max, "max-steps", rc.max_steps);
    if (!(rc.tol > 0.0)) throw Error(ErrorKind::validation, "tol must be positive");
    if (rc.samples < 8) throw Error(ErrorKind::validation, "samples must be at least 8");
    if (!k_path.empty()) {
      K = read_complex_vector_file(k_path);
      if (K->size() != 4) throw Error(ErrorKind::validation, "K file must hold exactly 4 complex numbers");
    }

    if (*tetra) {
      const auto res = tetra_verify(rc, method == "genus4", K);
      json j = json::array();
      bool ok = true;
      for (const auto& tc : res) {
        json c = candidate_json(tc.report);
        c["expected"] = {{"t", tc.t_expected}, {"b", tc.b_expected}, {"chi", tc.chi_expected}};
        c["checks"] = {{"t", tc.t_ok}, {"b", tc.b_ok}, {"chi", tc.chi_ok}, {"h3", tc.h3_ok}};
        c["tolerances"] = {{"t", 1e-10}, {"b", 1e-10}, {"chi", 1e-9}};
        ok = ok && tc.pass();
        j.push_back(c);
      }
      std::cout << json{{"tetra_verify", j}, {"pass", ok}, {"tol", rc.tol}}.dump(2) << '\n';
      if (!ok) {
        fail_json("assertion", "tetrahedral check failed", 2, {{"report", j}});
        return 2;
      }
      return 0;
    }

    if (*h3) {
      CandidateReport c = candidate_report(es, rc, method == "genus4", K);
      json j = candidate_json(c);
      j["conjecture_match"] = c.h3.zero_count == c.conjecture_expected;
      if (!csv_path.empty()) {
        const ZeroScan scan = scan_reduced_h3(es, rc.samples);
        auto os = open_out(csv_path);
        os << "s,abs_r0,abs_rplus,abs_rminus\n";
        for (std::size_t k = 0; k < scan.s_grid.size(); ++k)
          os << fmt17(scan.s_grid[k]) << ',' << fmt17(scan.abs_residual[0][k]) << ','
             << fmt17(scan.abs_residual[1][k]) << ',' << fmt17(scan.abs_residual[2][k]) << '\n';
      }
      if (!fig5_path.empty()) {
        auto os = open_out(fig5_path);
        write_fig5_csv(os, fig5_branches(12, 3.0, 1024));
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*trace) {
      if (!(rc.step > 0.0)) throw Error(ErrorKind::validation, "step must be positive");
      const double g0 = 5.0 * std::sqrt(2.0);
      const Branch b = branch == "plus" ? Branch::plus : Branch::minus;
      TraceOptions to;
      to.step = rc.step;
      to.max_steps = rc.max_steps;
      const TraceResult tr = trace_family({0.0, b == Branch::plus ? g0 : -g0}, b, to);
      {
        auto os = open_out(out_path);
        write_trace_csv(os, tr);
      }
      const auto& last = tr.points.back();
      json j = {{"branch", branch},
                {"points", tr.points.size()},
                {"stop_reason", tr.stop_reason},
                {"end", {last.a, last.g}},
                {"end_distance_to_cusp", std::hypot(last.a - 3.0, last.g)},
                {"end_degeneracy", last.degeneracy},
                {"accept_tol", to.accept_tol},
                {"h3_along_family", "unverified"},
                {"csv", out_path}};
      std::cout << j.dump(2) << '\n';
      if (tr.stop_reason == "corrector") {
        fail_json("corrector_divergence", "corrector failed; CSV holds the points up to the last good one", 3,
                  {{"last_good", {last.a, last.g}}});
        return 3;
      }
      return 0;
    }

    if (*idents) {
      const IdentityReport r = identities_report(rc);
      json pairs = json::array();
      for (const auto& p : r.ramanujan_pairs) pairs.push_back({{"y", p[0]}, {"x", p[1]}, {"abs_diff", p[2]}});
      json Ts = json::array();
      for (const cplx t : r.T_samples) Ts.push_back(cjson(t));
      const double max_res = std::max({r.identity1_max, r.identity2_max, r.ramanujan_half, r.ramanujan_pairs_max});
      json j = {{"identity1_max", r.identity1_max},
                {"identity2_max", r.identity2_max},
                {"identity2_printed_form_min", r.identity2_printed_min},
                {"ramanujan_half", r.ramanujan_half},
                {"ramanujan_pairs", pairs},
                {"ramanujan_pairs_max", r.ramanujan_pairs_max},
                {"fay_accola_kappa", cjson(r.fay_accola_kappa)},
                {"fay_accola_spread", r.fay_accola_spread},
                {"fay_accola_bruteforce_max", r.fay_accola_bruteforce_max},
                {"max_residual", max_res},
                {"T_samples", Ts},
                {"tolerances", {{"identities", 1e-9}, {"ramanujan_half", 1e-12}, {"ramanujan_pairs", 1e-9},
                                {"fay_accola", 1e-8}}}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*theta) {
      const CMat tau = read_tau_file(tau_path);
      validate_period_matrix(tau);
      const CVec z = read_complex_vector_file(z_path);
      if (z.size() != tau.rows())
        throw Error(ErrorKind::validation, "z has " + std::to_string(z.size()) + " entries, tau has genus " +
                                               std::to_string(tau.rows()));
      if (!(rc.tol <= 1e-6)) throw Error(ErrorKind::validation, "tol must lie in (0, 1e-6]");
      const ThetaEvaluator th(tau, rc.tol);
      const cplx v = th(z);
      json j = {{"value", {v.real(), v.imag()}},
                {"value_text", fmt17(v.real()) + (v.imag() < 0 ? "" : "+") + fmt17(v.imag()) + "i"},
                {"tol_requested", rc.tol},
                {"tol_achieved", truncation_tail_bound(tau, th.radius())},
                {"radius", th.radius()},
                {"points", th.point_count(RVec(z.imag()))}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*agm) {
      const AgmCheck r = agm_check({a, g});
      json loops = json::array();
      for (const auto& l : r.loops)
        loops.push_back({{"pair", {l.i, l.j}},
                         {"agm", {cjson(l.agm[0]), cjson(l.agm[1])}},
                         {"quadrature", {cjson(l.quadrature[0]), cjson(l.quadrature[1])}},
                         {"iterations", l.iterations},
                         {"rel_diff", l.rel_diff}});
      json roots = json::array();
      for (const cplx x : r.roots.all()) roots.push_back(cjson(x));
      json j = {{"a", a},
                {"g", g},
                {"branch_points", roots},
                {"degeneracy", r.roots.min_distance},
                {"loops", loops},
                {"es_agm", {r.es_agm.re, r.es_agm.im}},
                {"es_quadrature", {r.es_quadrature.re, r.es_quadrature.im}},
                {"beta_agm", beta_from_period(r.es_agm.xdx.real())}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    fail_json(e.kind_name(), e.what(), e.exit_code());
    return e.exit_code();
  } catch (const std::exception& e) {
    fail_json("internal", e.what(), 2);
    return 2;
  }
  return 0;
}

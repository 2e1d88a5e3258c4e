#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monospec/cover.hpp"
#include "monospec/curvefam.hpp"
#include "monospec/hyperell.hpp"
#include "monospec/rtheta.hpp"

namespace monospec {

struct RunConfig {
  double tol = 1e-10;
  int samples = 2048;
  double step = 0.02;
  int max_steps = 500;
};

struct H3Report {
  ESIntegers es;
  std::string method = "reduced";
  int samples = 0;
  std::vector<double> interior_zeros;
  std::vector<double> boundary_zeros;
  int zero_count = 0;
  std::string verdict;  // monopole iff zero_count == 0
  double min_abs_theta = 0.0;
};

H3Report h3_report_reduced(const ESIntegers& es, int samples);
// |theta(U s + K; tau_hat)| along s in [0,2]
H3Report h3_report_genus4(const ESIntegers& es, int samples, const CVec& K, double tol);

struct CandidateReport {
  ESIntegers es;
  double t = 0.0, b = 0.0, chi = 0.0;
  CMat tau_hat;
  CVec U;
  H3Report h3;
  std::optional<H3Report> h3_genus4;
  std::string notice;  // e.g. genus-4 scan skipped
  int conjecture_expected = 0;
};

CandidateReport candidate_report(const ESIntegers& es, const RunConfig& cfg, bool genus4,
                                 const std::optional<CVec>& K);

struct TetraCheck {
  CandidateReport report;
  double t_expected = 0.0, b_expected = 0.0, chi_expected = 0.0;
  bool t_ok = false, b_ok = false, chi_ok = false, h3_ok = false;
  bool pass() const { return t_ok && b_ok && chi_ok && h3_ok; }
};

// (1,0) then (1,1)
std::array<TetraCheck, 2> tetra_verify(const RunConfig& cfg, bool genus4, const std::optional<CVec>& K);
double tetra_chi_closed_form();

struct IdentityReport {
  std::vector<cplx> T_samples;
  double identity1_max = 0.0;
  double identity2_max = 0.0;
  double identity2_printed_min = 0.0;  // printed form, both factors; stays O(1)
  double ramanujan_half = 0.0;         // residual at (1/2 - 5 sqrt3/18, 1/2)
  std::vector<std::array<double, 3>> ramanujan_pairs;  // y, x, |f(1-x) - 2 f(1-y)|
  double ramanujan_pairs_max = 0.0;
  double fay_accola_spread = 0.0;
  cplx fay_accola_kappa;
  double fay_accola_bruteforce_max = 0.0;
};

std::vector<cplx> identity_T_samples();
std::array<std::array<cplx, 2>, 5> fay_accola_points();
IdentityReport identities_report(const RunConfig& cfg);

struct AgmCheck {
  HECurve curve;
  BranchSet roots;
  struct Loop {
    int i, j;
    std::array<cplx, 2> agm, quadrature;
    int iterations;
    double rel_diff;
  };
  std::vector<Loop> loops;
  ESValue es_agm, es_quadrature;
};

AgmCheck agm_check(const HECurve& c);

// solutions y of the three reduced-H3 residual equations for T = 2 sqrt(-3) r
struct Fig5Point {
  long p, q;  // r = p/q
  double T_im;
  int eps;
  double y;
};
std::vector<Fig5Point> fig5_branches(int max_denominator, double r_max, int samples);

// plain-text inputs: rows of `re+imi` entries; one complex per line
CMat read_tau_file(const std::string& path);
CVec read_complex_vector_file(const std::string& path);
cplx parse_complex(const std::string& token);

std::string fmt17(double x);
void write_trace_csv(std::ostream& os, const TraceResult& tr);
void write_fig5_csv(std::ostream& os, const std::vector<Fig5Point>& pts);

}  // namespace monospec

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "monospec/specfun.hpp"

namespace monospec {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Throws invalid_matrix unless tau is square, genus 1..4, symmetric to 1e-12
// and Im(tau) positive definite.
void validate_period_matrix(const CMat& tau);

// Ellipsoid radius R such that lattice points with ||L(n+c)|| > R contribute
// less than tol (relative to exp(pi y^T Y^-1 y)); L^T L = pi Im(tau).
// The bound is uniform in the centre c = Y^-1 y.
double truncation_radius(const CMat& tau, double tol, const RVec& y);
// the bound itself at a given radius (what a radius actually guarantees)
double truncation_tail_bound(const CMat& tau, double radius);

// Precomputed Cholesky factor and radius; reusable across many z.
class ThetaEvaluator {
 public:
  ThetaEvaluator(const CMat& tau, double tol);

  cplx operator()(const CVec& z) const;
  // number of lattice points summed at centre for Im z = y
  std::size_t point_count(const RVec& y) const;
  double radius() const { return radius_; }
  int genus() const { return g_; }

 private:
  template <class F>
  void enumerate(const RVec& c, F&& visit) const;

  int g_;
  CMat tau_;
  RMat u_;     // upper triangular, u^T u = pi Im tau
  RMat yinv_;  // (Im tau)^-1
  double radius_;
};

cplx riemann_theta(const CVec& z, const CMat& tau, double tol);

std::vector<cplx> riemann_theta_along_line(const CVec& z0, const CVec& direction,
                                           const std::vector<double>& s_grid, const CMat& tau,
                                           double tol);

// Plain cube sum over |n_i| <= bound. Test oracle only.
cplx riemann_theta_bruteforce(const CVec& z, const CMat& tau, int bound);

}  // namespace monospec

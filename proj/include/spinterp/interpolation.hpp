#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>

#include "spinterp/common.hpp"
#include "spinterp/gaussian.hpp"

namespace spinterp {

// Strictly positive weights of the log-partition function f.
class WeightVector {
 public:
  static WeightVector validated(Eigen::VectorXd w);
  static WeightVector uniform(int n);
  int dim() const { return static_cast<int>(w_.size()); }
  const Eigen::VectorXd& entries() const { return w_; }

 private:
  explicit WeightVector(Eigen::VectorXd w) : w_(std::move(w)) {}
  Eigen::VectorXd w_;
};

// A point of the probability simplex (entries in [0,1], summing to 1).
class GibbsVector {
 public:
  static GibbsVector validated(Eigen::VectorXd mu, double tol = 1e-12);
  static GibbsVector vertex(int n, int l);
  int dim() const { return static_cast<int>(mu_.size()); }
  const Eigen::VectorXd& entries() const { return mu_; }

 private:
  friend GibbsVector gibbs_weights(const Eigen::VectorXd&,
                                   const WeightVector&);
  explicit GibbsVector(Eigen::VectorXd mu) : mu_(std::move(mu)) {}
  Eigen::VectorXd mu_;
};

// Outcome of the covariance comparison checks. Both checks fill all three
// flags (they are cheap); worst_violation records the most negative margin
// of the check that produced the verdict, with its index pair.
struct ComparisonVerdict {
  bool classic_diag_ok = false;
  bool classic_offdiag_ok = false;
  bool metric_ok = false;
  double worst_violation = 0.0;
  int worst_i = -1;
  int worst_j = -1;
};

// A Monte Carlo estimate with its seed for reproduction.
struct QuenchedEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// f(x) = log sum_i w_i e^{x_i}, computed max-shifted; finite for all finite
// x. Throws NonFinite otherwise.
double log_partition_f(const Eigen::VectorXd& x, const WeightVector& w);

// log Z = log sum_sigma e^{-beta H(sigma)} over a table of energies,
// max-shifted; Z itself is never materialized.
double log_partition(std::span<const double> energies, double beta);

// mu_i = w_i e^{x_i} / sum_j w_j e^{x_j}, max-shifted.
GibbsVector gibbs_weights(const Eigen::VectorXd& x, const WeightVector& w);

// Hessian of f: diag(mu) - mu mu^T. Rows sum to zero; PSD.
Eigen::MatrixXd hessian_f(const Eigen::VectorXd& x, const WeightVector& w);

// F(C) = E[f(X)] for X centered Gaussian with covariance C, estimated over
// m samples (streams keyed by (seed, sample index)).
QuenchedEstimate estimate_F(const CovarianceMatrix& c, const WeightVector& w,
                            std::int64_t m, std::uint64_t seed,
                            int threads = 1);

// Monte Carlo estimate of
//   1/2 Int_0^1 E[ Tr((C^Y - C^X) Hess f(Z(t))) ] dt,
// Z(t) = sqrt(1-t) X + sqrt(t) Y with X, Y independent, Gauss-Legendre in t
// with common random numbers across nodes. Equals F(C^Y) - F(C^X).
QuenchedEstimate interpolation_rhs(const CovarianceMatrix& cx,
                                   const CovarianceMatrix& cy,
                                   const WeightVector& w, int t_nodes,
                                   std::int64_t m, std::uint64_t seed,
                                   int threads = 1);

// Equal diagonals and dominating off-diagonals: C^X_ii = C^Y_ii and
// C^X_ij >= C^Y_ij for i != j, within tol.
ComparisonVerdict check_classic_conditions(const CovarianceMatrix& cx,
                                           const CovarianceMatrix& cy,
                                           double tol = kCompareTol);

// Metric domination: d_Y(i,j) >= d_X(i,j) - tol for all pairs.
ComparisonVerdict check_metric_conditions(const CovarianceMatrix& cx,
                                          const CovarianceMatrix& cy,
                                          double tol = kCompareTol);

// G(mu) = sum_i mu_i D_ii - sum_ij mu_i mu_j D_ij for symmetric D.
double simplex_G(const Eigen::MatrixXd& d, const GibbsVector& mu);

struct SimplexCheck {
  bool closed_form = false;   // D_ii + D_jj - 2 D_ij >= 0 for all i, j
  bool brute_force = false;   // min over probes >= -kSimplexTol
  double min_value = 0.0;
  Eigen::VectorXd witness;    // minimizing mu found by the probe set
};

// Tests inf G >= 0 two ways: the closed-form pair condition and a brute
// force over vertices, pair midpoints and a deterministic simplex grid
// (resolution 1/32 for n <= 4, 10^4 quasi-random points for n > 4).
SimplexCheck simplex_G_nonneg(const Eigen::MatrixXd& d);

struct InequalityReport {
  int n = 0;
  std::uint64_t seed = 0;
  std::int64_t m = 0;
  QuenchedEstimate f_x;
  QuenchedEstimate f_y;
  ComparisonVerdict classic;
  ComparisonVerdict metric;
  bool holds = false;  // F(C^Y) >= F(C^X) - 3 combined stderr
};

// Runs both condition checks and estimates F for both covariances with
// independent derived seeds.
InequalityReport verify_inequality(const CovarianceMatrix& cx,
                                   const CovarianceMatrix& cy,
                                   const WeightVector& w, std::int64_t m,
                                   std::uint64_t seed, int threads = 1);

std::string inequality_csv_header();
std::string inequality_csv_row(const InequalityReport& r);

}  // namespace spinterp

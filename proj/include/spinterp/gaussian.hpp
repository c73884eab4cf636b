#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "spinterp/common.hpp"

namespace spinterp {

// Symmetric positive-semidefinite matrix of energy covariances. Construct
// through validate_covariance; entries are stored symmetrized.
class CovarianceMatrix {
 public:
  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& entries() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  // max(1, trace/n): the scale relative PSD/ridge tolerances refer to.
  double trace_scale() const;

 private:
  friend CovarianceMatrix validate_covariance(const Eigen::MatrixXd&, double);
  explicit CovarianceMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

// Pairwise L2 pseudo-distances among the coordinates of a Gaussian vector.
// d_ii = 0 and d_ij = d_ji >= 0; zero off-diagonal entries are allowed.
class MetricMatrix {
 public:
  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& entries() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  friend MetricMatrix validate_metric(const Eigen::MatrixXd&, double);
  friend MetricMatrix metric_from_covariance(const CovarianceMatrix&, double);
  explicit MetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

// A factor A with A A^T ~= C.
class FactorMatrix {
 public:
  explicit FactorMatrix(Eigen::MatrixXd a) : a_(std::move(a)) {}
  int dim() const { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXd& entries() const { return a_; }

 private:
  Eigen::MatrixXd a_;
};

// Checks symmetry and positive semidefiniteness (eigenvalue test) after
// symmetrizing by (M + M^T)/2. Throws NotSymmetric / NotPsd.
CovarianceMatrix validate_covariance(const Eigen::MatrixXd& m,
                                     double psd_tol = kPsdTol);

// Checks d_ii = 0, symmetry, nonnegativity and the triangle inequality
// within tol (pseudo-metrics pass). Throws Error subtypes on violation.
MetricMatrix validate_metric(const Eigen::MatrixXd& m,
                             double tol = kCompareTol);

// d_ij = sqrt(C_ii + C_jj - 2 C_ij); radicands within -psd_tol*scale of zero
// clamp to 0, anything below that throws NegativeRadicand.
MetricMatrix metric_from_covariance(const CovarianceMatrix& c,
                                    double psd_tol = kPsdTol);

// Gram matrix of a point cloud: C_ij = (p_i, p_j). Throws DimensionMismatch
// if the points do not share a dimension.
CovarianceMatrix gram_from_points(const std::vector<Eigen::VectorXd>& points);
CovarianceMatrix gram_from_points(const Eigen::MatrixXd& points_as_rows);

// Cholesky-like factor of C. Plain Cholesky first; exactly semidefinite
// inputs fall back to a pivoted LDL^T with clamped D, and only then to
// Cholesky of C + ridge*I. ridge < 0 selects 1e-10 * max(1, trace/n).
// Guarantee: |A A^T - C|_max <= ridge*n + kFactorTol*scale.
FactorMatrix factor_covariance(const CovarianceMatrix& c, double ridge = -1.0);

// m samples of the centered Gaussian vector A Z (rows of the result).
// Sample i uses the counter-based stream keyed by (seed, i), so identical
// (seed, index) reproduce the sample bit for bit and callers may partition
// index ranges across threads freely.
Eigen::MatrixXd sample_gaussian(const FactorMatrix& a, std::uint64_t seed,
                                std::int64_t m);

struct EuclideanTest {
  bool euclidean = false;
  Eigen::MatrixXd gram;  // -1/2 J d^2 J, a valid Gram matrix when euclidean
  double min_eigenvalue = 0.0;
};

// Classical double-centering test: the metric embeds in R^n iff the centered
// squared-distance matrix is PSD (min eigenvalue >= -eig_tol).
EuclideanTest is_euclidean_metric(const MetricMatrix& d,
                                  double eig_tol = kPsdTol);

// True iff the two covariances induce the same L2 metric entrywise within
// tol. Throws DimensionMismatch.
bool metrics_equal(const CovarianceMatrix& cx, const CovarianceMatrix& cy,
                   double tol = kCompareTol);

}  // namespace spinterp

#include "spinterp/gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "spinterp/rng.hpp"

namespace spinterp {

namespace {

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

double CovarianceMatrix::trace_scale() const {
  const int n = dim();
  if (n == 0) return 1.0;
  return std::max(1.0, m_.trace() / n);
}

CovarianceMatrix validate_covariance(const Eigen::MatrixXd& m,
                                     double psd_tol) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("covariance must be square, got " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  const double asym = max_abs(m - m.transpose());
  const double sym_scale = std::max(1.0, max_abs(m));
  if (asym > psd_tol * sym_scale) {
    throw NotSymmetric("max asymmetry " + std::to_string(asym) +
                       " exceeds tolerance");
  }
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  const int n = static_cast<int>(s.rows());
  const double scale = n == 0 ? 1.0 : std::max(1.0, s.trace() / n);
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        s, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -psd_tol * scale) {
      throw NotPsd("most negative eigenvalue " + std::to_string(min_eig));
    }
  }
  return CovarianceMatrix(std::move(s));
}

MetricMatrix validate_metric(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("metric must be square");
  }
  const int n = static_cast<int>(m.rows());
  const double scale = std::max(1.0, max_abs(m));
  for (int i = 0; i < n; ++i) {
    if (std::abs(m(i, i)) > tol * scale) {
      throw Error("metric diagonal must vanish");
    }
    for (int j = 0; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol * scale) {
        throw NotSymmetric("metric must be symmetric");
      }
      if (m(i, j) < -tol * scale) {
        throw Error("metric entries must be nonnegative");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (m(i, j) > m(i, k) + m(k, j) + tol * scale) {
          throw Error("triangle inequality violated at (" +
                      std::to_string(i) + "," + std::to_string(j) + "," +
                      std::to_string(k) + ")");
        }
      }
    }
  }
  Eigen::MatrixXd d = 0.5 * (m + m.transpose());
  d.diagonal().setZero();
  d = d.cwiseMax(0.0);
  return MetricMatrix(std::move(d));
}

MetricMatrix metric_from_covariance(const CovarianceMatrix& c,
                                    double psd_tol) {
  const int n = c.dim();
  const double scale = c.trace_scale();
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double r = c(i, i) + c(j, j) - 2.0 * c(i, j);
      if (r < -psd_tol * scale) {
        throw NegativeRadicand("C_ii + C_jj - 2 C_ij = " + std::to_string(r) +
                               " at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
      }
      d(i, j) = d(j, i) = std::sqrt(std::max(r, 0.0));
    }
  }
  return MetricMatrix(std::move(d));
}

CovarianceMatrix gram_from_points(const std::vector<Eigen::VectorXd>& points) {
  const int n = static_cast<int>(points.size());
  const Eigen::Index k = n == 0 ? 0 : points[0].size();
  for (const auto& p : points) {
    if (p.size() != k) {
      throw DimensionMismatch("points must share a dimension");
    }
  }
  Eigen::MatrixXd rows(n, k);
  for (int i = 0; i < n; ++i) rows.row(i) = points[static_cast<size_t>(i)];
  return gram_from_points(rows);
}

CovarianceMatrix gram_from_points(const Eigen::MatrixXd& points_as_rows) {
  Eigen::MatrixXd g = points_as_rows * points_as_rows.transpose();
  return validate_covariance(g);
}

FactorMatrix factor_covariance(const CovarianceMatrix& c, double ridge) {
  const int n = c.dim();
  const double scale = c.trace_scale();
  if (ridge < 0.0) ridge = kRidgeScale * scale;
  const double budget = ridge * n + kFactorTol * scale;

  const auto good = [&](const Eigen::MatrixXd& a) {
    return max_abs(a * a.transpose() - c.entries()) <= budget;
  };

  Eigen::LLT<Eigen::MatrixXd> llt(c.entries());
  if (llt.info() == Eigen::Success) {
    Eigen::MatrixXd a = llt.matrixL();
    if (good(a)) return FactorMatrix(std::move(a));
  }

  // Semidefinite case: pivoted LDL^T with D clamped at zero factors
  // rank-deficient covariances exactly (e.g. the zero matrix).
  Eigen::LDLT<Eigen::MatrixXd> ldlt(c.entries());
  if (ldlt.info() == Eigen::Success) {
    Eigen::VectorXd d = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd a =
        ldlt.transpositionsP().transpose() *
        Eigen::MatrixXd(Eigen::MatrixXd(ldlt.matrixL()) * d.asDiagonal());
    if (good(a)) return FactorMatrix(std::move(a));
  }

  Eigen::MatrixXd ridged = c.entries();
  ridged.diagonal().array() += ridge;
  Eigen::LLT<Eigen::MatrixXd> llt2(ridged);
  if (llt2.info() == Eigen::Success) {
    Eigen::MatrixXd a = llt2.matrixL();
    if (good(a)) return FactorMatrix(std::move(a));
  }
  throw FactorizationFailed(
      "covariance not factorizable even with ridge; corrupted input?");
}

Eigen::MatrixXd sample_gaussian(const FactorMatrix& a, std::uint64_t seed,
                                std::int64_t m) {
  const int n = a.dim();
  Eigen::MatrixXd out(m, n);
  Eigen::VectorXd z(n);
  for (std::int64_t i = 0; i < m; ++i) {
    GaussianStream g(seed, static_cast<std::uint64_t>(i));
    for (int j = 0; j < n; ++j) z(j) = g.next();
    out.row(i) = (a.entries() * z).transpose();
  }
  return out;
}

EuclideanTest is_euclidean_metric(const MetricMatrix& d, double eig_tol) {
  const int n = d.dim();
  EuclideanTest out;
  if (n == 0) {
    out.euclidean = true;
    return out;
  }
  const Eigen::MatrixXd sq = d.entries().array().square();
  const Eigen::MatrixXd j =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  out.gram = -0.5 * j * sq * j;
  out.gram = 0.5 * (out.gram + out.gram.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.gram,
                                                    Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  out.euclidean = out.min_eigenvalue >= -eig_tol;
  return out;
}

bool metrics_equal(const CovarianceMatrix& cx, const CovarianceMatrix& cy,
                   double tol) {
  if (cx.dim() != cy.dim()) {
    throw DimensionMismatch("covariances must share a dimension");
  }
  const MetricMatrix dx = metric_from_covariance(cx);
  const MetricMatrix dy = metric_from_covariance(cy);
  return max_abs(dx.entries() - dy.entries()) <= tol;
}

}  // namespace spinterp

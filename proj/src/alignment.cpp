#include "spinterp/alignment.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

namespace spinterp {

namespace {

double coordinate_scale(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w) {
  double m = 0.0;
  if (v.size() > 0) m = std::max(m, v.cwiseAbs().maxCoeff());
  if (w.size() > 0) m = std::max(m, w.cwiseAbs().maxCoeff());
  return 1.0 + m;
}

void require_same_shape(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w) {
  if (v.rows() != w.rows() || v.cols() != w.cols()) {
    throw DimensionMismatch("point sets must have matching shapes");
  }
}

// Orthogonal Procrustes: O = U V^T from the SVD of the cross-covariance
// W^T V. When an exact orthogonal match exists the minimum residual is
// zero, so this O attains it.
Eigen::MatrixXd procrustes(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w) {
  const Eigen::MatrixXd cross = w.transpose() * v;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

void require_residual(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w,
                      const Eigen::MatrixXd& o, const Eigen::VectorXd* b,
                      double tol, double scale) {
  const double res = alignment_residual(v, w, o, b);
  if (res > std::max(tol, kAlignTol) * scale) {
    throw HypothesisViolated("residual " + std::to_string(res) +
                             " exceeds the alignment tolerance");
  }
}

}  // namespace

Eigen::MatrixXd recover_rotation(const Eigen::MatrixXd& v_points,
                                 const Eigen::MatrixXd& w_points,
                                 double tol) {
  require_same_shape(v_points, w_points);
  const Eigen::MatrixXd gv = v_points * v_points.transpose();
  const Eigen::MatrixXd gw = w_points * w_points.transpose();
  const double scale =
      std::max(1.0, std::max(gv.size() > 0 ? gv.cwiseAbs().maxCoeff() : 0.0,
                             gw.size() > 0 ? gw.cwiseAbs().maxCoeff() : 0.0));
  double worst = 0.0;
  int wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < gv.rows(); ++i) {
    for (Eigen::Index j = 0; j < gv.cols(); ++j) {
      const double dev = std::abs(gv(i, j) - gw(i, j));
      if (dev > worst) {
        worst = dev;
        wi = static_cast<int>(i);
        wj = static_cast<int>(j);
      }
    }
  }
  if (worst > tol * scale) {
    throw HypothesisViolated(
        "Gram matrices differ by " + std::to_string(worst) + " at pair (" +
        std::to_string(wi) + "," + std::to_string(wj) + ")");
  }
  const Eigen::MatrixXd o = procrustes(v_points, w_points);
  require_residual(v_points, w_points, o, nullptr, tol,
                   coordinate_scale(v_points, w_points));
  return o;
}

RigidMotion recover_isometry(const Eigen::MatrixXd& v_points,
                             const Eigen::MatrixXd& w_points, double tol) {
  require_same_shape(v_points, w_points);
  const Eigen::Index n = v_points.rows();
  double scale = 1.0;
  double worst = 0.0;
  int wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dv = (v_points.row(i) - v_points.row(j)).norm();
      const double dw = (w_points.row(i) - w_points.row(j)).norm();
      scale = std::max(scale, std::max(dv, dw));
      const double dev = std::abs(dv - dw);
      if (dev > worst) {
        worst = dev;
        wi = static_cast<int>(i);
        wj = static_cast<int>(j);
      }
    }
  }
  if (worst > tol * scale) {
    throw HypothesisViolated(
        "pairwise distances differ by " + std::to_string(worst) +
        " at pair (" + std::to_string(wi) + "," + std::to_string(wj) + ")");
  }

  RigidMotion motion;
  if (n == 0) {
    const Eigen::Index k = v_points.cols();
    motion.rotation = Eigen::MatrixXd::Identity(k, k);
    motion.offset = Eigen::VectorXd::Zero(k);
    return motion;
  }
  const Eigen::RowVectorXd mean_v = v_points.colwise().mean();
  const Eigen::RowVectorXd mean_w = w_points.colwise().mean();
  const Eigen::MatrixXd cv = v_points.rowwise() - mean_v;
  const Eigen::MatrixXd cw = w_points.rowwise() - mean_w;
  motion.rotation = procrustes(cv, cw);
  motion.offset =
      mean_w.transpose() - motion.rotation * mean_v.transpose();
  require_residual(v_points, w_points, motion.rotation, &motion.offset, tol,
                   coordinate_scale(v_points, w_points));
  return motion;
}

double alignment_residual(const Eigen::MatrixXd& v_points,
                          const Eigen::MatrixXd& w_points,
                          const Eigen::MatrixXd& rotation,
                          const Eigen::VectorXd* offset) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < v_points.rows(); ++i) {
    Eigen::VectorXd mapped = rotation * v_points.row(i).transpose();
    if (offset != nullptr) mapped += *offset;
    worst = std::max(worst, (mapped - w_points.row(i).transpose()).norm());
  }
  return worst;
}

double orthogonality_defect(const Eigen::MatrixXd& rotation) {
  const Eigen::Index k = rotation.cols();
  return (rotation.transpose() * rotation - Eigen::MatrixXd::Identity(k, k))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace spinterp

#pragma once

#include <Eigen/Core>

#include "spinterp/common.hpp"

namespace spinterp {

// An orthogonal map plus a translation: w = O v + b.
struct RigidMotion {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd offset;
};

// Recovers O in O(k) with w_i = O v_i from two point sets (rows of the
// inputs) whose pairwise inner products agree within tol (relative to the
// largest Gram entry). Rank-deficient sets work: the SVD's trailing
// singular directions pair the two orthogonal complements, which is the
// basis-completion construction. Throws HypothesisViolated when the Gram
// hypothesis fails or the residual exceeds the alignment tolerance.
Eigen::MatrixXd recover_rotation(const Eigen::MatrixXd& v_points,
                                 const Eigen::MatrixXd& w_points,
                                 double tol = kAlignTol);

// Recovers (O, b) with w_i = O v_i + b from equal pairwise distances
// (within tol relative to the largest distance): centers both clouds at
// their centroids, recovers the rotation, then b = mean(W) - O mean(V).
RigidMotion recover_isometry(const Eigen::MatrixXd& v_points,
                             const Eigen::MatrixXd& w_points,
                             double tol = kAlignTol);

// max_i |O v_i + b - w_i| (b optional), the recovery residual.
double alignment_residual(const Eigen::MatrixXd& v_points,
                          const Eigen::MatrixXd& w_points,
                          const Eigen::MatrixXd& rotation,
                          const Eigen::VectorXd* offset = nullptr);

// |O^T O - I|_max.
double orthogonality_defect(const Eigen::MatrixXd& rotation);

}  // namespace spinterp

#pragma once

// Test-only oracles and generators, independent of the library paths they
// check.

#include <Eigen/Core>
#include <Eigen/QR>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "spinterp/rng.hpp"

namespace testsupport {

struct GhNode {
  double x;
  double weight;
};

// Gauss-Hermite nodes/weights for integrals against e^{-x^2}
// (orthonormal-recurrence Newton iteration).
inline std::vector<GhNode> gauss_hermite(int n) {
  std::vector<GhNode> out(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) -
          1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * out[0].x;
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * out[1].x;
    } else {
      z = 2.0 * z - out[static_cast<std::size_t>(i - 2)].x;
    }
    double pp = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = std::pow(std::numbers::pi, -0.25);
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    out[static_cast<std::size_t>(i)].x = z;
    out[static_cast<std::size_t>(i)].weight = 2.0 / (pp * pp);
    out[static_cast<std::size_t>(n - 1 - i)].x = -z;
    out[static_cast<std::size_t>(n - 1 - i)].weight = out[i].weight;
  }
  return out;
}

// E[g(X)] for X ~ N(0, 1).
inline double gauss_expect_1d(const std::function<double(double)>& g,
                              int nodes = 60) {
  const auto gh = gauss_hermite(nodes);
  double acc = 0.0;
  for (const auto& node : gh) {
    acc += node.weight * g(std::numbers::sqrt2 * node.x);
  }
  return acc / std::sqrt(std::numbers::pi);
}

// E[g(X1, X2)] for independent standard normals.
inline double gauss_expect_2d(
    const std::function<double(double, double)>& g, int nodes = 60) {
  const auto gh = gauss_hermite(nodes);
  double acc = 0.0;
  for (const auto& a : gh) {
    for (const auto& b : gh) {
      acc += a.weight * b.weight *
             g(std::numbers::sqrt2 * a.x, std::numbers::sqrt2 * b.x);
    }
  }
  return acc / std::numbers::pi;
}

// log sum w_i e^{x_i} in extended precision, for the finite-difference
// oracle (double roundoff at step 1e-5 would swamp the 1e-6 tolerance).
inline long double lse_long(const std::vector<long double>& x,
                            const std::vector<long double>& w) {
  long double shift = x[0];
  for (long double v : x) shift = std::max(shift, v);
  long double s = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i] * std::exp(x[i] - shift);
  }
  return shift + std::log(s);
}

// Central second differences of log sum w e^x, step h, in long double.
inline Eigen::MatrixXd finite_diff_hessian_lse(const Eigen::VectorXd& x,
                                               const Eigen::VectorXd& w,
                                               long double h = 1e-5L) {
  const int n = static_cast<int>(x.size());
  std::vector<long double> base(static_cast<std::size_t>(n));
  std::vector<long double> wl(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    base[static_cast<std::size_t>(i)] = static_cast<long double>(x(i));
    wl[static_cast<std::size_t>(i)] = static_cast<long double>(w(i));
  }
  const auto eval = [&](int i, long double di, int j, long double dj) {
    std::vector<long double> p = base;
    p[static_cast<std::size_t>(i)] += di;
    p[static_cast<std::size_t>(j)] += dj;
    return lse_long(p, wl);
  };
  Eigen::MatrixXd hess(n, n);
  const long double f0 = lse_long(base, wl);
  for (int i = 0; i < n; ++i) {
    hess(i, i) = static_cast<double>(
        (eval(i, h, i, 0.0L) - 2.0L * f0 + eval(i, -h, i, 0.0L)) / (h * h));
    for (int j = i + 1; j < n; ++j) {
      hess(i, j) = hess(j, i) = static_cast<double>(
          (eval(i, h, j, h) - eval(i, h, j, -h) - eval(i, -h, j, h) +
           eval(i, -h, j, -h)) /
          (4.0L * h * h));
    }
  }
  return hess;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols,
                                     spinterp::GaussianStream& g) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = g.next();
  }
  return m;
}

inline Eigen::MatrixXd random_psd(int n, spinterp::GaussianStream& g,
                                  double scale = 1.0) {
  const Eigen::MatrixXd a =
      random_matrix(n, n, g) * std::sqrt(scale / n);
  return a * a.transpose();
}

inline Eigen::MatrixXd random_symmetric(int n, spinterp::GaussianStream& g) {
  const Eigen::MatrixXd a = random_matrix(n, n, g);
  return 0.5 * (a + a.transpose());
}

inline Eigen::MatrixXd random_orthogonal(int n, spinterp::GaussianStream& g) {
  const Eigen::MatrixXd a = random_matrix(n, n, g);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

}  // namespace testsupport

#include "spinterp/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "spinterp/common.hpp"

namespace spinterp {

std::vector<QuadratureNode> gauss_legendre_01(int k) {
  if (k < 1) throw Error("gauss_legendre_01: need at least one node");
  std::vector<QuadratureNode> out(static_cast<std::size_t>(k));
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th root of P_k.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1]; roots come in +/- pairs.
    out[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * w};
    out[static_cast<std::size_t>(k - 1 - i)] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return out;
}

}  // namespace spinterp

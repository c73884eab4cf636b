#pragma once

#include <vector>

namespace spinterp {

struct QuadratureNode {
  double x;
  double weight;
};

// Gauss-Legendre rule on [0, 1], exact for polynomials of degree 2k-1.
// Nodes from Newton iteration on the Legendre recurrence.
std::vector<QuadratureNode> gauss_legendre_01(int k);

}  // namespace spinterp

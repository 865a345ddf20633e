#ifndef SYMCG_QUADRATURE_HPP
#define SYMCG_QUADRATURE_HPP

#include <vector>

namespace symcg {

/// Gauss-Legendre rule on the reference interval [0,1]. Weights sum to 1;
/// an n-point rule integrates polynomials of degree <= 2n-1 exactly.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Nodes are found by Newton iteration on the Legendre polynomial P_n,
/// converged to 1e-15; supports 1 <= n <= 32.
QuadratureRule gauss_legendre(int n);

}  // namespace symcg

#endif

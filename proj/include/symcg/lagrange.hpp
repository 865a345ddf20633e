#ifndef SYMCG_LAGRANGE_HPP
#define SYMCG_LAGRANGE_HPP

#include <vector>

namespace symcg {

/// Lagrange interpolation basis on a set of distinct nodes.
/// l_i(node_j) = delta_ij and the basis sums to 1 everywhere.
class LagrangeBasis {
 public:
  /// Nodes must be distinct; for degree >= 1 the reference constructors place
  /// endpoints at 0 and 1.
  explicit LagrangeBasis(std::vector<double> nodes);

  int degree() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<double>& nodes() const { return nodes_; }

  double value(int i, double x) const;
  double derivative(int i, double x) const;

 private:
  std::vector<double> nodes_;
};

/// degree+1 equispaced nodes on [0,1] (a single midpoint node for degree 0).
std::vector<double> equispaced_nodes(int degree);

/// Cached equispaced basis on the reference interval.
const LagrangeBasis& reference_basis(int degree);

/// One basis value for an ad-hoc node set, used where bases are built on
/// transformed (non-reference) nodes.
double lagrange_value(const std::vector<double>& nodes, int i, double x);
double lagrange_derivative(const std::vector<double>& nodes, int i, double x);

}  // namespace symcg

#endif

#ifndef SYMCG_GALERKIN_HPP
#define SYMCG_GALERKIN_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symcg/lagrange.hpp"
#include "symcg/linalg.hpp"
#include "symcg/mesh.hpp"
#include "symcg/quadrature.hpp"

namespace symcg {

struct ElementContext;

/// Weak residual of an n_eq-component first order system, discretised with
/// continuous trial functions of degree q+1 and discontinuous test functions
/// of degree q.
struct WeakForm {
  int n_eq = 1;
  int q = 0;

  /// Pointwise residual rows r_i(t, u, u_t). Throws EvaluationError on
  /// inadmissible states (e.g. U = 0 where the scheme divides by U).
  std::function<void(double t, const double* u, const double* ut, double* out)> residual;

  /// Optional test weight w_k(t); defaults to the Lagrange test basis of
  /// degree q on the element. Receives the element context because modified
  /// (invariantised) weights depend on nodal trial data.
  std::function<double(int k, double t, const double* u, const ElementContext&)> test_weight;

  /// Optional closed-form Jacobian of the residual w.r.t. (u, u_t); when
  /// absent the Newton solver falls back to forward differences.
  std::function<void(double t, const double* u, const double* ut, Mat& dr_du, Mat& dr_dut)>
      jacobian;

  std::string name;
};

/// Per-element trial data: node times (q+2 points including both endpoints),
/// test node times (q+1 points) and nodal values per component.
struct ElementContext {
  std::size_t index = 0;
  std::vector<double> trial_nodes;           // ascending, first = t_n, last = t_{n+1}
  std::vector<double> test_nodes;            // q+1 points
  std::vector<std::vector<double>> nodal;    // [component][trial node]

  // True when the nodes are exactly equispaced on the element, enabling
  // reference-coordinate evaluation. Evaluating Lagrange factors (t - t_j)
  // in global time loses ~eps*|t|/tau relative accuracy per factor, which
  // wrecks derivative values on long domains; the reference path is immune.
  bool reference_nodes = false;

  double t_left() const { return trial_nodes.front(); }
  double t_right() const { return trial_nodes.back(); }
  double tau() const { return t_right() - t_left(); }
  int trial_degree() const { return static_cast<int>(trial_nodes.size()) - 1; }

  /// Trial value / derivative of one component at time t (global coordinates).
  double value(int comp, double t) const;
  double derivative(int comp, double t) const;
  void values(double t, double* u, double* ut) const;

  /// Context for element n with all nodal values set to the incoming state.
  static ElementContext constant_guess(const TimeMesh& mesh, std::size_t n, int q,
                                       const Vec& left_values);
};

/// Continuous piecewise polynomial of degree q+1 per component. Nodal
/// coefficients are stored in a single global array per component, so
/// inter-element continuity is exact by construction.
class Trajectory {
 public:
  Trajectory(TimeMesh mesh, int q, int n_eq, const Vec& initial);

  const TimeMesh& mesh() const { return mesh_; }
  int q() const { return q_; }
  int n_eq() const { return n_eq_; }

  /// Number of elements actually populated (equals mesh().n_elements() after
  /// a successful integration).
  std::size_t n_completed() const { return completed_; }

  void set_element(std::size_t n, const ElementContext& ctx);
  ElementContext element_context(std::size_t n) const;

  /// Value and one-sided derivative at t. At interior mesh nodes the
  /// left-element (right-limit) polynomial is used.
  void evaluate(double t, double* u, double* ut) const;
  Vec value(double t) const;

  /// Nodal value of a component at mesh boundary i.
  double node_value(int comp, std::size_t i) const;

 private:
  TimeMesh mesh_;
  int q_, n_eq_;
  std::size_t completed_ = 0;
  std::vector<Vec> coeff_;  // [component][global trial node]
  std::size_t nodes_per_element() const { return static_cast<std::size_t>(q_) + 1; }
};

struct NewtonConfig {
  double tolerance = 1e-12;
  int max_iterations = 50;
  double divergence_threshold = 1e10;
  /// Halvings attempted when a Newton step lands on an inadmissible state.
  int max_step_halvings = 10;
  double fd_step = 1e-7;
};

/// Assembled element residual: entry (i, k) = integral of r_i * w_k over the
/// element, ordered component-major (i * (q+1) + k).
Vec assemble_element_residual(const WeakForm& wf, const ElementContext& ctx,
                              const QuadratureRule& quad);

struct NewtonResult {
  bool converged = false;
  ElementContext ctx;
  int iterations = 0;
  std::string reason;
};

/// Solves the per-element nonlinear system. Left-endpoint nodal values of the
/// initial guess are held fixed; the remaining (q+1) nodes per component are
/// the unknowns.
NewtonResult newton_solve_element(const WeakForm& wf, const ElementContext& guess,
                                  const NewtonConfig& cfg, const QuadratureRule& quad);

enum class GuessStrategy { ConstantExtension, PreviousSlope };

struct IntegrateOptions {
  NewtonConfig newton;
  GuessStrategy guess = GuessStrategy::ConstantExtension;
};

struct IntegrateResult {
  Trajectory trajectory;
  std::optional<std::size_t> failed_element;  // set on Newton non-convergence
  bool ok() const { return !failed_element.has_value(); }
};

/// Element-by-element march. On failure returns the partial trajectory and
/// the failing element index.
IntegrateResult integrate(const WeakForm& wf, const TimeMesh& mesh, const Vec& initial,
                          const IntegrateOptions& opts, const QuadratureRule& quad);

}  // namespace symcg

#endif

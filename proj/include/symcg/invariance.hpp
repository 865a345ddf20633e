#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symcg/galerkin.hpp"
#include "symcg/group.hpp"

namespace symcg {

// A smooth curve t -> (u, u_t) on an interval, given in closed form.
struct SmoothCurve {
  std::function<Vec(double)> value;
  std::function<Vec(double)> derivative;
  double t_lo = 0.0;
  double t_hi = 1.0;
};

// Curve whose components are the successive derivatives of the scalar
// polynomial with the given coefficients: u_i = y^(i), u_t,i = y^(i+1).
// Such curves satisfy the chain relations (u_t = v, ...) of the auxiliary
// systems identically.
SmoothCurve polynomial_jet_curve(const Vec& coeffs, int n_eq, double t_lo, double t_hi);

struct LiftedFunctionalResult {
  Vec residual;
  double t_left = 0.0;   // transformed element endpoints
  double t_right = 0.0;
};

// Group-transformed weak functional on one element: the residual of the
// transformed curve, weighted by the lifted test functions (same nodal
// formula over the node images) and the lifted measure, pulled back to the
// original element by quadrature.
LiftedFunctionalResult lifted_functional(const WeakForm& wf, const GroupAction& action,
                                         const GroupElement& g, const SmoothCurve& curve,
                                         const ElementContext& element,
                                         const QuadratureRule& quad);

// max over samples of the deviation from the untransformed functional
double invariance_defect(const WeakForm& wf, const GroupAction& action, const SmoothCurve& curve,
                         const ElementContext& element,
                         const std::vector<GroupElement>& g_samples, const QuadratureRule& quad);

// Transformed parametric curve t -> (t_hat, u_hat, u_hat_t).
std::function<JetImage(double)> prolong_curve(const GroupAction& action, const GroupElement& g,
                                              const SmoothCurve& curve);

// Generic pointwise invariantisation: at each quadrature point the group
// parameters of the lifted integrand (rows, measure, test weights) are
// replaced by the moving frame at that point.
WeakForm invariantize_pointwise(const WeakForm& wf_standard, const GroupAction& action,
                                const MovingFrame& mf);

struct AugmentedResult {
  Trajectory trajectory;
  std::optional<std::size_t> failed_element;
  std::vector<GroupElement> frames;  // recovered group parameters per element
};

// Invariantisation without a closed-form frame: per element, solve the
// lifted weak form jointly with the normalisation equations for the nodal
// values and the group parameters.  Normalisations are evaluated at the
// element's left endpoint.
AugmentedResult integrate_augmented(const WeakForm& wf_standard, const GroupAction& action,
                                    const std::vector<CrossSectionEntry>& cs,
                                    const TimeMesh& mesh, const Vec& initial,
                                    const NewtonConfig& cfg, const QuadratureRule& quad);

}  // namespace symcg

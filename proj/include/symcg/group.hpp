#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symcg/linalg.hpp"

namespace symcg {

// Element of an r-parameter local Lie group, stored in the chart the
// associated action expects.
struct GroupElement {
  Vec params;
};

// First-jet image of a point (t, u, u_t) under the group action.
struct JetImage {
  double t;
  Vec u;
  Vec ut;
  double dt_dt;  // total derivative of the new time w.r.t. the old one
};

// Lie group action on (t, u) together with its closed-form prolongation to
// first jets.  `apply` maps base points only; `apply_jet` also transforms
// derivatives and reports the time reparametrisation factor, which is the
// lifted measure density.
struct GroupAction {
  int r = 0;
  int n_eq = 0;
  std::string name;

  std::function<void(const GroupElement&, double t, const double* u, double* t_out,
                     double* u_out)>
      apply;
  std::function<JetImage(const GroupElement&, double t, const Vec& u, const Vec& ut)> apply_jet;
  // compose(g1, g2) acts as "apply g1 first, then g2".
  std::function<GroupElement(const GroupElement&, const GroupElement&)> compose;
  std::function<GroupElement(const GroupElement&)> inverse;
  // Optional domain guard: false when the element is outside the local chart
  // or the point sits where the action is singular.
  std::function<bool(const GroupElement&, double t, const Vec& u)> admissible;

  // Identity parameters; zeros unless the chart says otherwise (e.g. SL(2)
  // stores the full matrix, so the identity is (1,0,0,1)).
  Vec identity_params;

  // Defining equation of the chart when the stored parameters outnumber the
  // intrinsic group dimension (SL(2): det - 1 = 0).  Needed by the augmented
  // solve to keep its system square.
  std::function<double(const GroupElement&)> chart_constraint;

  GroupElement identity() const {
    return GroupElement{identity_params.empty() ? Vec(r, 0.0) : identity_params};
  }
};

// Right moving frame: rho(g . z) = rho(z) . g^{-1}.  `double_cover` marks
// matrix groups where equivariance only holds up to a global sign.
struct MovingFrame {
  std::function<GroupElement(double t, const Vec& u, const Vec& ut)> frame;
  std::function<bool(double t, const Vec& u, const Vec& ut)> admissible;
  bool double_cover = false;
};

// One normalised coordinate of the cross-section: the jet coordinate with
// the given index (0 = t, 1..n = u, n+1.. = u_t) is pinned to `target`.
struct CrossSectionEntry {
  int coord;
  double target;
  // Sign-of rules (e.g. the normalisation u = sign(u)) compare |coordinate|
  // against the target instead.
  bool use_abs = false;
};

double jet_coordinate(const JetImage& z, int coord);

// Largest |rho(g.z) - rho(z) g^{-1}| over the frame parameters; for
// double-cover groups the minimum over both signs of the composed element.
double equivariance_defect(const GroupAction& action, const MovingFrame& frame,
                           const GroupElement& g, double t, const Vec& u, const Vec& ut);

// Largest deviation of the frame-normalised jet from the cross-section.
double cross_section_defect(const GroupAction& action, const MovingFrame& frame,
                            const std::vector<CrossSectionEntry>& section, double t, const Vec& u,
                            const Vec& ut);

}  // namespace symcg

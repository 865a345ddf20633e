#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "symcg/galerkin.hpp"
#include "symcg/group.hpp"

namespace symcg {

// A model problem: weak forms for both scheme flavours, the symmetry group,
// its moving frame, and reference data for experiments.
struct ProblemInstance {
  std::string name;
  int n_eq = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  Vec initial;
  std::function<Vec(double)> exact;  // empty when no closed form is shipped

  std::function<WeakForm(int q)> standard_form;
  std::function<WeakForm(int q)> invariant_form;

  GroupAction action;
  MovingFrame frame;  // frame.frame empty when the problem needs none
  std::vector<CrossSectionEntry> cross_section;

  // Jet-state admissibility for the schemes and the frame together.
  std::function<bool(double t, const Vec& u, const Vec& ut)> admissible;
  // Draws a random admissible jet-consistent state (u_{i+1} = du_i/dt along
  // chained components).  `negate` flips to the u<0 sign branch where the
  // frame supports one.
  std::function<void(std::mt19937&, bool negate, double& t, Vec& u, Vec& ut)> sample_state;
};

ProblemInstance working_example(bool growth = false);
ProblemInstance schwarzian();
ProblemInstance quasi_linear();
ProblemInstance non_projectable(double C = 1.0, double y0 = 0.5);
ProblemInstance naive_linearised();

// Coefficients and a pair of homogeneous solutions for the linear problem
// v_t + p v + q u = f, u_t = v.
struct LinearCoefficients {
  std::function<double(double)> p, q, f;
  std::function<double(double)> alpha, alpha_t, alpha_tt;
  std::function<double(double)> gamma, gamma_t, gamma_tt;
};
ProblemInstance linear_second_order(const LinearCoefficients& c, Vec initial, double t_start,
                                    double t_end, std::function<Vec(double)> exact = {});

// Registry keyed by CLI name: working, working-growth, schwarzian,
// quasilinear, noproject, naive, linear2.
const ProblemInstance& problem(const std::string& name);
std::vector<std::string> problem_names();

}  // namespace symcg

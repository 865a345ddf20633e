#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symcg/galerkin.hpp"
#include "symcg/invariance.hpp"
#include "symcg/problems.hpp"

namespace symcg {

double l2_error(const Trajectory& traj, const std::function<Vec(double)>& exact,
                int quad_pts = 16);
double max_nodal_error(const Trajectory& traj, const std::function<Vec(double)>& exact);

// experimental orders of convergence for consecutive (error, tau) pairs
Vec eoc(const Vec& errors, const Vec& taus);

struct ReportRow {
  std::string problem;
  std::string scheme;
  int q = 0;
  double tau = 0.0;
  std::size_t n_elements = 0;
  bool failed = false;
  double max_nodal_error = 0.0;
  double l2_error = 0.0;
  std::optional<double> eoc;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
};

struct RunConfig {
  std::string problem = "working";
  std::string scheme = "standard";  // standard | invariant | augmented | naive
  int q = 0;
  double tau = 0.1;
  std::optional<double> t_start;  // problem defaults when unset
  std::optional<double> t_end;
  int quad_points = 16;
  NewtonConfig newton;
  GuessStrategy guess = GuessStrategy::ConstantExtension;
  unsigned seed = 1u;
};

// Weak form for the requested scheme flavour; validates the combination
// (naive only for the naive problem, augmented needs a cross-section, ...).
WeakForm scheme_form(const ProblemInstance& p, const std::string& scheme, int q);

struct RunResult {
  Trajectory trajectory;
  std::optional<std::size_t> failed_element;
  bool ok() const { return !failed_element.has_value(); }
};

RunResult run_single(const RunConfig& cfg);

ExperimentReport convergence_study(const std::string& problem, const std::string& scheme,
                                   const std::vector<int>& qs, double tau0, int levels,
                                   std::optional<double> t_end = {},
                                   int quad_points = 16);

struct SweepRow {
  std::string scheme;
  double tau = 0.0;
  bool solved = false;
};
std::vector<SweepRow> solvability_sweep(const std::string& problem,
                                        const std::vector<double>& taus,
                                        const std::vector<std::string>& schemes = {"standard",
                                                                                   "invariant"},
                                        int q = 0);

struct SeriesRow {
  double t = 0.0;
  int component = 0;
  double abs_error = 0.0;
};
std::vector<SeriesRow> pointwise_error_series(const RunConfig& cfg, int samples_per_element = 10);

// max nodal deviation of 0.5*(U^2+V^2) from 0.5 for u_t = v, v_t = -u, (1,0)
double energy_drift(int q, double tau, double t_end);

// max nodal gap between the standard and invariant trajectories under a
// (q+1)-point quadrature rule
double quadrature_equivalence(const std::string& problem, int q, double tau, double t_end);

std::string emit_csv(const ExperimentReport& report);
ExperimentReport parse_convergence_csv(const std::string& text);
std::string emit_csv(const std::vector<SweepRow>& rows);
std::string emit_csv(const std::vector<SeriesRow>& rows);

// Max invariance defect of the scheme over seeded random (curve, g) samples.
double sampled_invariance_defect(const std::string& problem, const std::string& scheme, int q,
                                 int samples, unsigned seed);

// Full property suite; prints one line per property, returns overall pass.
bool property_suite(std::ostream& out);

}  // namespace symcg

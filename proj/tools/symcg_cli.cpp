// Command-line front end: single runs, convergence tables, solvability
// sweeps, invariance-defect samples, and the property suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symcg/errors.hpp"
#include "symcg/experiments.hpp"

namespace {

int write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous Galerkin ODE solver with symmetry-preserving schemes"};
  app.require_subcommand(1);

  const std::vector<std::string> schemes = {"standard", "invariant", "augmented", "naive"};

  // run
  auto* run = app.add_subcommand("run", "Integrate one configuration, emit an error series CSV");
  symcg::RunConfig cfg;
  double t_start = 0.0, t_end = 0.0, newton_tol = 1e-12;
  std::string out_path;
  run->add_option("--problem", cfg.problem, "Problem name")->required();
  run->add_option("--scheme", cfg.scheme)->check(CLI::IsMember(schemes))->required();
  run->add_option("--q", cfg.q, "Test-space degree (trial degree q+1)")->required();
  run->add_option("--tau", cfg.tau, "Element size")->required();
  auto* run_tend = run->add_option("--t-end", t_end);
  run_tend->required();
  auto* run_tstart = run->add_option("--t-start", t_start);
  run->add_option("--quad", cfg.quad_points, "Quadrature points per element");
  auto* run_tol = run->add_option("--newton-tol", newton_tol);
  run->add_option("--seed", cfg.seed);
  run->add_option("--out", out_path, "Output CSV path")->required();

  // convergence
  auto* conv = app.add_subcommand("convergence", "Halving study, emit a convergence CSV");
  std::string c_problem, c_scheme;
  std::vector<int> c_qs;
  double c_tau0 = 0.0, c_tend = 0.0;
  int c_levels = 0, c_quad = 16;
  std::string c_out;
  conv->add_option("--problem", c_problem)->required();
  conv->add_option("--scheme", c_scheme)->check(CLI::IsMember(schemes))->required();
  conv->add_option("--q", c_qs, "Degrees, e.g. --q 0 1 2")->required();
  conv->add_option("--tau0", c_tau0, "Coarsest element size")->required();
  conv->add_option("--levels", c_levels, "Number of halvings + 1")->required();
  conv->add_option("--t-end", c_tend)->required();
  conv->add_option("--quad", c_quad);
  conv->add_option("--out", c_out)->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Solvability sweep over element sizes");
  std::string s_problem = "noproject", s_out;
  std::vector<double> s_taus;
  sweep->add_option("--problem", s_problem);
  sweep->add_option("--taus", s_taus)->required();
  sweep->add_option("--out", s_out)->required();

  // invariance
  auto* inv = app.add_subcommand("invariance", "Sampled invariance defect of a scheme");
  std::string i_problem, i_scheme;
  int i_q = 0, i_samples = 10;
  unsigned i_seed = 1u;
  inv->add_option("--problem", i_problem)->required();
  inv->add_option("--scheme", i_scheme)->check(CLI::IsMember(schemes))->required();
  inv->add_option("--q", i_q);
  inv->add_option("--samples", i_samples);
  inv->add_option("--seed", i_seed);

  // properties
  auto* props = app.add_subcommand("properties", "Run the full property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      if (run_tstart->count()) cfg.t_start = t_start;
      cfg.t_end = t_end;
      if (run_tol->count()) cfg.newton.tolerance = newton_tol;
      symcg::RunResult r = symcg::run_single(cfg);
      if (!r.ok()) {
        std::cerr << "solver failure at element " << *r.failed_element << " (t = "
                  << r.trajectory.mesh().boundary(*r.failed_element) << ")\n";
        return 3;
      }
      return write_file(out_path, symcg::emit_csv(symcg::pointwise_error_series(cfg)));
    }
    if (conv->parsed()) {
      const symcg::ExperimentReport report = symcg::convergence_study(
          c_problem, c_scheme, c_qs, c_tau0, c_levels, c_tend, c_quad);
      const int rc = write_file(c_out, symcg::emit_csv(report));
      if (rc) return rc;
      std::cout << symcg::emit_csv(report);
      return 0;
    }
    if (sweep->parsed()) {
      const auto rows = symcg::solvability_sweep(s_problem, s_taus);
      const int rc = write_file(s_out, symcg::emit_csv(rows));
      if (rc) return rc;
      std::cout << symcg::emit_csv(rows);
      return 0;
    }
    if (inv->parsed()) {
      const double d =
          symcg::sampled_invariance_defect(i_problem, i_scheme, i_q, i_samples, i_seed);
      std::printf("max invariance defect over %d curves: %.3e\n", i_samples, d);
      return 0;
    }
    if (props->parsed()) return symcg::property_suite(std::cout) ? 0 : 4;
  } catch (const symcg::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return run->parsed() ? 3 : 2;
  }
  return 0;
}

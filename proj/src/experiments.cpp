#include "symcg/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "symcg/errors.hpp"

namespace symcg {

double l2_error(const Trajectory& traj, const std::function<Vec(double)>& exact, int quad_pts) {
  const QuadratureRule quad = gauss_legendre(quad_pts);
  const int n_eq = traj.n_eq();
  Vec u(n_eq), ut(n_eq);
  double acc = 0.0;
  for (std::size_t n = 0; n < traj.n_completed(); ++n) {
    const ElementContext ctx = traj.element_context(n);
    const double tau = ctx.tau();
    for (int j = 0; j < quad.size(); ++j) {
      const double t = ctx.t_left() + tau * quad.nodes[j];
      ctx.values(t, u.data(), ut.data());
      const Vec ex = exact(t);
      double s = 0.0;
      for (int c = 0; c < n_eq; ++c) s += (u[c] - ex[c]) * (u[c] - ex[c]);
      acc += tau * quad.weights[j] * s;
    }
  }
  return std::sqrt(acc);
}

double max_nodal_error(const Trajectory& traj, const std::function<Vec(double)>& exact) {
  double m = 0.0;
  for (std::size_t i = 0; i <= traj.n_completed(); ++i) {
    const double t = traj.mesh().boundary(i);
    const Vec ex = exact(t);
    for (int c = 0; c < traj.n_eq(); ++c)
      m = std::max(m, std::abs(traj.node_value(c, i) - ex[c]));
  }
  return m;
}

Vec eoc(const Vec& errors, const Vec& taus) {
  if (errors.size() != taus.size() || errors.size() < 2)
    throw ParameterError("eoc: need matching sequences of length >= 2");
  for (double e : errors)
    if (!(e > 0.0)) throw ParameterError("eoc: non-positive error");
  for (double t : taus)
    if (!(t > 0.0)) throw ParameterError("eoc: non-positive tau");
  Vec out(errors.size() - 1);
  for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    out[k] = std::log(errors[k + 1] / errors[k]) / std::log(taus[k + 1] / taus[k]);
  return out;
}

WeakForm scheme_form(const ProblemInstance& p, const std::string& scheme, int q) {
  if (q < 0 || q > 3) throw ParameterError("scheme_form: q must be in 0..3");
  if (p.name == "naive" && q != 0)
    throw ParameterError("scheme_form: the naive problem is fixed to q = 0");
  if (scheme == "naive") {
    if (p.name != "naive")
      throw ParameterError("scheme_form: scheme 'naive' is only for the naive problem");
    return p.standard_form(q);
  }
  if (scheme == "standard") return p.standard_form(q);
  if (scheme == "invariant") {
    if (!p.invariant_form) throw ParameterError("scheme_form: no invariant form for " + p.name);
    return p.invariant_form(q);
  }
  throw ParameterError("scheme_form: unknown scheme " + scheme);
}

namespace {

TimeMesh mesh_for(const ProblemInstance& p, const RunConfig& cfg) {
  const double t0 = cfg.t_start.value_or(p.t_start);
  const double t1 = cfg.t_end.value_or(p.t_end);
  if (!(t1 > t0) || !(cfg.tau > 0.0)) throw ParameterError("run: bad time domain or tau");
  // Non-integer span/tau is rounded to the nearest element count.
  const std::size_t n = std::max<std::size_t>(1, std::llround((t1 - t0) / cfg.tau));
  return TimeMesh::uniform(t0, t1, n);
}

}  // namespace

RunResult run_single(const RunConfig& cfg) {
  const ProblemInstance& p = problem(cfg.problem);
  const TimeMesh mesh = mesh_for(p, cfg);
  const QuadratureRule quad = gauss_legendre(cfg.quad_points);

  if (cfg.scheme == "augmented") {
    if (p.cross_section.empty())
      throw ParameterError("run: no cross-section for augmented scheme on " + cfg.problem);
    AugmentedResult r = integrate_augmented(p.standard_form(cfg.q), p.action, p.cross_section,
                                            mesh, p.initial, cfg.newton, quad);
    return RunResult{std::move(r.trajectory), r.failed_element};
  }

  const WeakForm wf = scheme_form(p, cfg.scheme, cfg.q);
  IntegrateOptions opts;
  opts.newton = cfg.newton;
  opts.guess = cfg.guess;
  IntegrateResult r = integrate(wf, mesh, p.initial, opts, quad);
  return RunResult{std::move(r.trajectory), r.failed_element};
}

ExperimentReport convergence_study(const std::string& problem_name, const std::string& scheme,
                                   const std::vector<int>& qs, double tau0, int levels,
                                   std::optional<double> t_end, int quad_points) {
  if (levels < 1 || !(tau0 > 0.0)) throw ParameterError("convergence_study: bad grid spec");
  const ProblemInstance& p = problem(problem_name);
  if (!p.exact) throw ParameterError("convergence_study: no exact solution for " + problem_name);

  ExperimentReport report;
  for (int q : qs) {
    Vec errs, taus;
    std::vector<ReportRow> block;
    double tau = tau0;
    for (int level = 0; level < levels; ++level, tau *= 0.5) {
      RunConfig cfg;
      cfg.problem = problem_name;
      cfg.scheme = scheme;
      cfg.q = q;
      cfg.tau = tau;
      cfg.t_end = t_end;
      cfg.quad_points = quad_points;
      RunResult r = run_single(cfg);
      ReportRow row;
      row.problem = problem_name;
      row.scheme = scheme;
      row.q = q;
      row.tau = tau;
      row.n_elements = r.trajectory.mesh().n_elements();
      if (!r.ok()) {
        row.failed = true;
      } else {
        row.max_nodal_error = max_nodal_error(r.trajectory, p.exact);
        row.l2_error = l2_error(r.trajectory, p.exact);
        errs.push_back(row.l2_error);
        taus.push_back(tau);
        if (errs.size() >= 2)
          row.eoc = std::log(errs.end()[-1] / errs.end()[-2]) /
                    std::log(taus.end()[-1] / taus.end()[-2]);
      }
      block.push_back(row);
    }
    report.rows.insert(report.rows.end(), block.begin(), block.end());
  }
  return report;
}

std::vector<SweepRow> solvability_sweep(const std::string& problem_name,
                                        const std::vector<double>& taus,
                                        const std::vector<std::string>& schemes, int q) {
  std::vector<SweepRow> rows;
  for (const std::string& scheme : schemes) {
    for (double tau : taus) {
      RunConfig cfg;
      cfg.problem = problem_name;
      cfg.scheme = scheme;
      cfg.q = q;
      cfg.tau = tau;
      bool solved = false;
      try {
        solved = run_single(cfg).ok();
      } catch (const std::exception&) {
        solved = false;
      }
      rows.push_back({scheme, tau, solved});
    }
  }
  return rows;
}

std::vector<SeriesRow> pointwise_error_series(const RunConfig& cfg, int samples_per_element) {
  const ProblemInstance& p = problem(cfg.problem);
  if (!p.exact) throw ParameterError("series: no exact solution for " + cfg.problem);
  RunResult r = run_single(cfg);
  std::vector<SeriesRow> rows;
  const int n_eq = r.trajectory.n_eq();
  Vec u(n_eq), ut(n_eq);
  for (std::size_t n = 0; n < r.trajectory.n_completed(); ++n) {
    const ElementContext ctx = r.trajectory.element_context(n);
    for (int j = 1; j <= samples_per_element; ++j) {
      const double t =
          ctx.t_left() + ctx.tau() * static_cast<double>(j) / samples_per_element;
      ctx.values(t, u.data(), ut.data());
      const Vec ex = p.exact(t);
      for (int c = 0; c < n_eq; ++c) rows.push_back({t, c, std::abs(u[c] - ex[c])});
    }
  }
  return rows;
}

double energy_drift(int q, double tau, double t_end) {
  WeakForm wf;
  wf.n_eq = 2;
  wf.q = q;
  wf.name = "harmonic";
  wf.residual = [](double, const double* u, const double* ut, double* out) {
    out[0] = ut[0] - u[1];
    out[1] = ut[1] + u[0];
  };
  const TimeMesh mesh = TimeMesh::uniform(0.0, t_end, std::llround(t_end / tau));
  IntegrateResult r = integrate(wf, mesh, {1.0, 0.0}, {}, gauss_legendre(16));
  if (!r.ok()) throw SingularMatrixError("energy_drift: integration failed");
  double drift = 0.0;
  for (std::size_t i = 0; i <= r.trajectory.n_completed(); ++i) {
    const double u = r.trajectory.node_value(0, i), v = r.trajectory.node_value(1, i);
    drift = std::max(drift, std::abs(0.5 * (u * u + v * v) - 0.5));
  }
  return drift;
}

double quadrature_equivalence(const std::string& problem_name, int q, double tau, double t_end) {
  const ProblemInstance& p = problem(problem_name);
  const TimeMesh mesh = TimeMesh::uniform(p.t_start, t_end, std::llround((t_end - p.t_start) / tau));
  const QuadratureRule quad = gauss_legendre(q + 1);
  IntegrateResult a = integrate(p.standard_form(q), mesh, p.initial, {}, quad);
  IntegrateResult b = integrate(p.invariant_form(q), mesh, p.initial, {}, quad);
  if (!a.ok() || !b.ok()) throw SingularMatrixError("quadrature_equivalence: integration failed");
  double gap = 0.0;
  for (std::size_t i = 0; i <= mesh.n_elements(); ++i)
    for (int c = 0; c < p.n_eq; ++c)
      gap = std::max(gap, std::abs(a.trajectory.node_value(c, i) - b.trajectory.node_value(c, i)));
  return gap;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string emit_csv(const ExperimentReport& report) {
  std::string out = "problem,scheme,q,tau,n_elements,max_nodal_error,l2_error,eoc\n";
  for (const ReportRow& r : report.rows) {
    out += r.problem + ',' + r.scheme + ',' + std::to_string(r.q) + ',' +
           fmt("%.10g", r.tau) + ',' + std::to_string(r.n_elements) + ',';
    if (r.failed)
      out += "failed,failed,";
    else {
      out += fmt("%.2e", r.max_nodal_error) + ',' + fmt("%.2e", r.l2_error) + ',';
      if (r.eoc) out += fmt("%.2f", *r.eoc);
    }
    out += '\n';
  }
  return out;
}

ExperimentReport parse_convergence_csv(const std::string& text) {
  ExperimentReport report;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) f.push_back(tok);
    f.resize(8);
    ReportRow r;
    r.problem = f[0];
    r.scheme = f[1];
    r.q = std::stoi(f[2]);
    r.tau = std::stod(f[3]);
    r.n_elements = std::stoul(f[4]);
    if (f[5] == "failed") {
      r.failed = true;
    } else {
      r.max_nodal_error = std::stod(f[5]);
      r.l2_error = std::stod(f[6]);
      if (!f[7].empty()) r.eoc = std::stod(f[7]);
    }
    report.rows.push_back(r);
  }
  return report;
}

std::string emit_csv(const std::vector<SweepRow>& rows) {
  std::string out = "scheme,tau,solved\n";
  for (const SweepRow& r : rows)
    out += r.scheme + ',' + fmt("%.10g", r.tau) + ',' + (r.solved ? "yes" : "no") + '\n';
  return out;
}

std::string emit_csv(const std::vector<SeriesRow>& rows) {
  std::string out = "t,component,abs_error\n";
  for (const SeriesRow& r : rows)
    out += fmt("%.10g", r.t) + ',' + std::to_string(r.component) + ',' +
           fmt("%.6e", r.abs_error) + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Property suite

namespace {

struct Suite {
  std::ostream& out;
  bool ok = true;
  void check(const std::string& name, bool pass, const std::string& detail = "") {
    out << (pass ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out << "  (" << detail << ")";
    out << '\n';
    ok &= pass;
  }
};

// Random group element in a box of radius `r` around the identity; SL(2)
// charts get det = 1 enforced by solving for delta.
GroupElement random_group_element(std::mt19937& rng, const GroupAction& action, double r) {
  std::uniform_real_distribution<double> d(-r, r);
  GroupElement g = action.identity();
  if (g.params.size() == 4 && action.chart_constraint) {
    double al;
    do {
      al = 1.0 + d(rng);
    } while (std::abs(al) < 0.2);
    const double be = d(rng), ga = d(rng);
    g.params = {al, be, ga, (1.0 + be * ga) / al};
  } else {
    for (double& x : g.params) x += d(rng);
  }
  return g;
}

const std::vector<std::string> framed_problems = {"working", "schwarzian", "quasilinear",
                                                  "noproject", "naive"};

bool supports_negation(const std::string& name) { return name != "schwarzian"; }

double frame_defects(const ProblemInstance& p, std::mt19937& rng, int draws, double* equiv_max) {
  double cs_max = 0.0;
  *equiv_max = 0.0;
  int done = 0, attempts = 0;
  while (done < draws && attempts < draws * 100) {
    ++attempts;
    double t;
    Vec u, ut;
    p.sample_state(rng, supports_negation(p.name) && (done % 2 == 1), t, u, ut);
    if (!p.frame.admissible(t, u, ut)) continue;
    const GroupElement g = random_group_element(rng, p.action, 0.5);
    if (p.action.admissible && !p.action.admissible(g, t, u)) continue;
    const JetImage z = p.action.apply_jet(g, t, u, ut);
    if (!p.frame.admissible(z.t, z.u, z.ut)) continue;
    cs_max = std::max(cs_max, cross_section_defect(p.action, p.frame, p.cross_section, t, u, ut));
    *equiv_max = std::max(*equiv_max, equivariance_defect(p.action, p.frame, g, t, u, ut));
    ++done;
  }
  if (done < draws) return 1.0;  // could not find enough admissible draws
  return cs_max;
}

// Jet-consistent polynomial curve staying in the scheme's admissible set on
// its element.
SmoothCurve defect_curve(const ProblemInstance& p, std::mt19937& rng) {
  std::uniform_real_distribution<double> small(-0.2, 0.2);
  Vec c(4);
  double lo = 0.1, hi = 0.6;
  if (p.name == "schwarzian") {
    c = {small(rng), 1.0 + 0.3 * small(rng), small(rng), small(rng)};
  } else if (p.name == "quasilinear") {
    lo = 1.0;
    hi = 1.5;
    c = {1.0 + small(rng), 0.2 + 0.25 * small(rng), 0.1 * small(rng), 0.1 * small(rng)};
  } else {
    c = {1.2 + small(rng), small(rng), small(rng), small(rng)};
  }
  return polynomial_jet_curve(c, p.n_eq, lo, hi);
}

// Curve whose components are independent polynomials rather than a jet
// prolongation.  The Schwarzian standard scheme needs this for a
// non-invariance witness: its first residual row is the Schwarzian
// derivative itself, which is a true invariant, and the remaining rows
// vanish identically on jet-consistent curves.  Off the jet (v != u_t)
// those rows are O(1) and transform with Moebius weight factors.
SmoothCurve off_jet_curve(const ProblemInstance& p, std::mt19937& rng) {
  std::uniform_real_distribution<double> small(-0.2, 0.2);
  std::vector<Vec> c(p.n_eq);
  for (int i = 0; i < p.n_eq; ++i) c[i] = {small(rng), small(rng)};
  c[0][0] += 1.2;
  if (p.n_eq > 1) c[1][0] = 1.0 + 0.3 * small(rng);  // keep v away from 0
  SmoothCurve curve;
  curve.t_lo = 0.1;
  curve.t_hi = 0.6;
  curve.value = [c](double t) {
    Vec u(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) u[i] = c[i][0] + c[i][1] * t;
    return u;
  };
  curve.derivative = [c](double) {
    Vec ut(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) ut[i] = c[i][1];
    return ut;
  };
  return curve;
}

ElementContext curve_element(const SmoothCurve& curve, int n_eq, int q) {
  const TimeMesh mesh({curve.t_lo, curve.t_hi});
  ElementContext ctx = ElementContext::constant_guess(mesh, 0, q, Vec(n_eq, 0.0));
  for (std::size_t i = 0; i < ctx.trial_nodes.size(); ++i) {
    const Vec u = curve.value(ctx.trial_nodes[i]);
    for (int cmp = 0; cmp < n_eq; ++cmp) ctx.nodal[cmp][i] = u[cmp];
  }
  return ctx;
}

bool curve_admissible_under(const ProblemInstance& p, const SmoothCurve& curve,
                            const GroupElement& g) {
  for (int j = 0; j <= 8; ++j) {
    const double t = curve.t_lo + (curve.t_hi - curve.t_lo) * j / 8.0;
    const Vec u = curve.value(t);
    if (p.action.admissible && !p.action.admissible(g, t, u)) return false;
    const JetImage z = p.action.apply_jet(g, t, u, curve.derivative(t));
    if (!(z.dt_dt > 1e-6)) return false;
    if (!p.admissible(z.t, z.u, z.ut)) return false;
  }
  return true;
}

double scheme_defect(const ProblemInstance& p, const WeakForm& wf, std::mt19937& rng,
                     int n_curves, int n_g, bool off_jet = false) {
  const QuadratureRule quad = gauss_legendre(16);
  double defect = 0.0;
  for (int i = 0; i < n_curves; ++i) {
    const SmoothCurve curve = off_jet ? off_jet_curve(p, rng) : defect_curve(p, rng);
    const ElementContext ctx = curve_element(curve, p.n_eq, wf.q);
    std::vector<GroupElement> gs;
    int attempts = 0;
    while (static_cast<int>(gs.size()) < n_g && attempts < n_g * 200) {
      ++attempts;
      const GroupElement g = random_group_element(rng, p.action, 0.5);
      if (curve_admissible_under(p, curve, g)) gs.push_back(g);
    }
    defect = std::max(defect, invariance_defect(wf, p.action, curve, ctx, gs, quad));
  }
  return defect;
}

// Re-derives the per-element group parameters for group-shifted data and
// checks the lifted functional is unchanged: the augmented scheme's
// invariance rests exactly on this equivariance of the normalisation solve.
double augmented_defect(const ProblemInstance& p, const WeakForm& wf, const Trajectory& traj,
                        const std::vector<GroupElement>& frames, std::mt19937& rng, int n_g) {
  const QuadratureRule quad = gauss_legendre(16);
  const int r = p.action.r;
  const auto& cs = p.cross_section;
  double defect = 0.0;

  for (std::size_t n : {std::size_t{0}, traj.n_completed() / 2, traj.n_completed() - 1}) {
    const ElementContext ctx = traj.element_context(n);
    SmoothCurve curve;
    curve.t_lo = ctx.t_left();
    curve.t_hi = ctx.t_right();
    curve.value = [&ctx, &p](double t) {
      Vec u(p.n_eq);
      for (int c = 0; c < p.n_eq; ++c) u[c] = ctx.value(c, t);
      return u;
    };
    curve.derivative = [&ctx, &p](double t) {
      Vec ut(p.n_eq);
      for (int c = 0; c < p.n_eq; ++c) ut[c] = ctx.derivative(c, t);
      return ut;
    };
    const Vec base = lifted_functional(wf, p.action, frames[n], curve, ctx, quad).residual;

    const double tn = ctx.t_left();
    Vec u0(p.n_eq), ut0(p.n_eq);
    ctx.values(tn, u0.data(), ut0.data());

    for (int trial = 0; trial < n_g; ++trial) {
      const GroupElement gamma = random_group_element(rng, p.action, 0.3);
      const JetImage shifted = p.action.apply_jet(gamma, tn, u0, ut0);

      // solve the normalisations for the shifted data
      GroupElement h = p.action.compose(p.action.inverse(gamma), frames[n]);
      auto norm_res = [&](const GroupElement& hh) {
        const JetImage z = p.action.apply_jet(hh, shifted.t, shifted.u, shifted.ut);
        Vec res(r);
        for (std::size_t i = 0; i < cs.size(); ++i) {
          double target = cs[i].target;
          if (cs[i].use_abs) {
            const JetImage orig{tn, u0, ut0, 1.0};
            target *= jet_coordinate(orig, cs[i].coord) < 0.0 ? -1.0 : 1.0;
          }
          res[i] = jet_coordinate(z, cs[i].coord) - target;
        }
        if (p.action.chart_constraint) res[cs.size()] = p.action.chart_constraint(hh);
        return res;
      };
      for (int it = 0; it < 25; ++it) {
        const Vec res = norm_res(h);
        if (inf_norm(res) < 1e-13) break;
        Mat jac(r, r);
        for (int col = 0; col < r; ++col) {
          GroupElement hp = h;
          const double step = 1e-7 * (1.0 + std::abs(h.params[col]));
          hp.params[col] += step;
          const Vec rp = norm_res(hp);
          for (int row = 0; row < r; ++row) jac(row, col) = (rp[row] - res[row]) / step;
        }
        Vec rhs(r);
        for (int i = 0; i < r; ++i) rhs[i] = -res[i];
        const Vec delta = lu_solve(jac, rhs);
        for (int i = 0; i < r; ++i) h.params[i] += delta[i];
      }

      const GroupElement total = p.action.compose(gamma, h);
      const Vec lifted = lifted_functional(wf, p.action, total, curve, ctx, quad).residual;
      for (std::size_t i = 0; i < base.size(); ++i)
        defect = std::max(defect, std::abs(lifted[i] - base[i]));
    }
  }
  return defect;
}

}  // namespace

double sampled_invariance_defect(const std::string& problem_name, const std::string& scheme,
                                 int q, int samples, unsigned seed) {
  const ProblemInstance& p = problem(problem_name);
  std::mt19937 rng(seed);
  return scheme_defect(p, scheme_form(p, scheme, q), rng, samples, 10);
}

bool property_suite(std::ostream& out) {
  Suite s{out};
  std::mt19937 rng(2024u);

  // frames: cross-section and equivariance
  for (const std::string& name : framed_problems) {
    const ProblemInstance& p = problem(name);
    double equiv = 0.0;
    const double cs = frame_defects(p, rng, 100, &equiv);
    s.check("frame cross-section: " + name, cs <= 1e-9, "defect " + fmt("%.2e", cs));
    s.check("frame equivariance: " + name, equiv <= 1e-9, "defect " + fmt("%.2e", equiv));
  }

  // invariance defects of the invariant schemes; witnessed non-invariance of
  // the standard ones
  for (const std::string& name : framed_problems) {
    const ProblemInstance& p = problem(name);
    const std::vector<int> qs = (p.name == "naive") ? std::vector<int>{0}
                                                    : std::vector<int>{0, 1};
    for (int q : qs) {
      const double d = scheme_defect(p, p.invariant_form(q), rng, 5, 10);
      s.check("invariance defect: " + name + " q=" + std::to_string(q), d <= 1e-9,
              "defect " + fmt("%.2e", d));
    }
    const double w = scheme_defect(p, p.standard_form(0), rng, 5, 10,
                                   /*off_jet=*/p.name == "schwarzian");
    s.check("non-invariance witness: " + name, w >= 1e-3, "defect " + fmt("%.2e", w));
  }

  // superposition invariance of the linear scheme, parameters up to 10
  {
    const ProblemInstance& p = problem("linear2");
    const QuadratureRule quad = gauss_legendre(16);
    double d = 0.0;
    for (int i = 0; i < 5; ++i) {
      const SmoothCurve curve = defect_curve(p, rng);
      const ElementContext ctx = curve_element(curve, p.n_eq, 1);
      std::vector<GroupElement> gs = {GroupElement{{10.0, -10.0}}, GroupElement{{-7.0, 10.0}},
                                      random_group_element(rng, p.action, 10.0)};
      d = std::max(d, invariance_defect(p.standard_form(1), p.action, curve, ctx, gs, quad));
    }
    s.check("superposition invariance: linear2", d <= 1e-12, "defect " + fmt("%.2e", d));
  }

  // pointwise invariantisation reproduces the printed rows
  for (const std::string& name : {std::string("working"), std::string("schwarzian"),
                                  std::string("noproject")}) {
    const ProblemInstance& p = problem(name);
    const WeakForm printed = p.invariant_form(0);
    const WeakForm generic = invariantize_pointwise(p.standard_form(0), p.action, p.frame);
    double rel = 0.0;
    Vec a(p.n_eq), b(p.n_eq);
    for (int i = 0; i < 100; ++i) {
      double t;
      Vec u, ut;
      p.sample_state(rng, false, t, u, ut);
      printed.residual(t, u.data(), ut.data(), a.data());
      generic.residual(t, u.data(), ut.data(), b.data());
      for (int c = 0; c < p.n_eq; ++c)
        rel = std::max(rel, std::abs(a[c] - b[c]) / std::max(1.0, std::abs(a[c])));
    }
    s.check("pointwise invariantisation: " + name, rel <= 1e-11, "rel gap " + fmt("%.2e", rel));
  }

  // energy conservation of the harmonic oscillator
  for (int q : {0, 1}) {
    const double d = energy_drift(q, 0.1, 100.0);
    s.check("energy drift q=" + std::to_string(q), d <= 1e-9, fmt("%.2e", d));
  }

  // standard = invariant under a (q+1)-point rule
  for (int q : {0, 1}) {
    const double d = quadrature_equivalence("working", q, 0.1, 5.0);
    s.check("quadrature equivalence q=" + std::to_string(q), d <= 1e-9, fmt("%.2e", d));
  }

  // trapezoidal oracle for the q=0 scheme on u_t = lambda u
  {
    WeakForm wf;
    wf.n_eq = 1;
    wf.q = 0;
    wf.residual = [](double, const double* u, const double* ut, double* out) {
      out[0] = ut[0] + u[0];
    };
    const TimeMesh mesh({0.0, 0.1});
    const NewtonResult r = newton_solve_element(
        wf, ElementContext::constant_guess(mesh, 0, 0, {1.0}), {}, gauss_legendre(16));
    const double expected = 0.95 / 1.05;
    const double gap = r.converged ? std::abs(r.ctx.nodal[0].back() - expected) : 1.0;
    s.check("trapezoidal oracle", gap <= 1e-12, fmt("%.2e", gap));
  }

  // augmented invariantisation of the working example
  {
    const ProblemInstance& p = problem("working");
    Vec errs, taus;
    bool all_ok = true;
    AugmentedResult witness{Trajectory(TimeMesh({0.0, 1.0}), 0, 2, {1.0, -1.0}), {}, {}};
    for (double tau : {0.15625, 0.078125, 0.0390625}) {
      const TimeMesh mesh = TimeMesh::uniform(0.0, 10.0, std::llround(10.0 / tau));
      AugmentedResult r = integrate_augmented(p.standard_form(0), p.action, p.cross_section,
                                              mesh, p.initial, {}, gauss_legendre(16));
      if (r.failed_element) {
        all_ok = false;
        break;
      }
      errs.push_back(l2_error(r.trajectory, p.exact));
      taus.push_back(tau);
      witness = std::move(r);
    }
    double rate = 0.0;
    if (all_ok) rate = eoc(errs, taus).back();
    s.check("augmented scheme EOC (working, q=0)", all_ok && std::abs(rate - 2.0) <= 0.05,
            "eoc " + fmt("%.3f", rate));
    double d = 1.0;
    if (all_ok)
      d = augmented_defect(p, p.standard_form(0), witness.trajectory, witness.frames, rng, 5);
    s.check("augmented scheme invariance", d <= 1e-9, "defect " + fmt("%.2e", d));
  }

  return s.ok;
}

}  // namespace symcg

#include "symcg/galerkin.hpp"

#include <cmath>

#include "symcg/errors.hpp"

namespace symcg {

namespace {

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

// Interpolation works directly over the stored node times, so contexts with
// non-equispaced nodes (e.g. group-transformed node images) evaluate
// correctly too; equispaced contexts go through the reference element.
double ElementContext::value(int comp, double t) const {
  if (reference_nodes) {
    const LagrangeBasis& basis = reference_basis(trial_degree());
    const double s = (t - t_left()) / tau();
    double v = 0.0;
    for (int i = 0; i <= trial_degree(); ++i) v += nodal[comp][i] * basis.value(i, s);
    return v;
  }
  double v = 0.0;
  for (int i = 0; i <= trial_degree(); ++i)
    v += nodal[comp][i] * lagrange_value(trial_nodes, i, t);
  return v;
}

double ElementContext::derivative(int comp, double t) const {
  if (reference_nodes) {
    const LagrangeBasis& basis = reference_basis(trial_degree());
    const double s = (t - t_left()) / tau();
    double v = 0.0;
    for (int i = 0; i <= trial_degree(); ++i) v += nodal[comp][i] * basis.derivative(i, s);
    return v / tau();
  }
  double v = 0.0;
  for (int i = 0; i <= trial_degree(); ++i)
    v += nodal[comp][i] * lagrange_derivative(trial_nodes, i, t);
  return v;
}

void ElementContext::values(double t, double* u, double* ut) const {
  const int p = trial_degree();
  for (std::size_t c = 0; c < nodal.size(); ++c) {
    u[c] = 0.0;
    ut[c] = 0.0;
  }
  if (reference_nodes) {
    const LagrangeBasis& basis = reference_basis(p);
    const double tau_n = tau();
    const double s = (t - t_left()) / tau_n;
    for (int i = 0; i <= p; ++i) {
      const double bv = basis.value(i, s);
      const double bd = basis.derivative(i, s) / tau_n;
      for (std::size_t c = 0; c < nodal.size(); ++c) {
        u[c] += nodal[c][i] * bv;
        ut[c] += nodal[c][i] * bd;
      }
    }
    return;
  }
  for (int i = 0; i <= p; ++i) {
    const double bv = lagrange_value(trial_nodes, i, t);
    const double bd = lagrange_derivative(trial_nodes, i, t);
    for (std::size_t c = 0; c < nodal.size(); ++c) {
      u[c] += nodal[c][i] * bv;
      ut[c] += nodal[c][i] * bd;
    }
  }
}

ElementContext ElementContext::constant_guess(const TimeMesh& mesh, std::size_t n, int q,
                                              const Vec& left_values) {
  ElementContext ctx;
  ctx.index = n;
  const double tl = mesh.boundary(n), tr = mesh.boundary(n + 1);
  const int p = q + 1;
  ctx.trial_nodes.resize(p + 1);
  for (int i = 0; i <= p; ++i)
    ctx.trial_nodes[i] = tl + (tr - tl) * static_cast<double>(i) / p;
  ctx.trial_nodes.back() = tr;
  ctx.test_nodes.clear();
  for (double s : equispaced_nodes(q)) ctx.test_nodes.push_back(tl + (tr - tl) * s);
  ctx.nodal.assign(left_values.size(), std::vector<double>(p + 1, 0.0));
  for (std::size_t c = 0; c < left_values.size(); ++c)
    ctx.nodal[c].assign(p + 1, left_values[c]);
  ctx.reference_nodes = true;
  return ctx;
}

Vec assemble_element_residual(const WeakForm& wf, const ElementContext& ctx,
                              const QuadratureRule& quad) {
  const int q = wf.q;
  const int n_eq = wf.n_eq;
  Vec out(static_cast<std::size_t>(n_eq) * (q + 1), 0.0);
  Vec u(n_eq), ut(n_eq), r(n_eq);
  const double tau = ctx.tau();

  for (int j = 0; j < quad.size(); ++j) {
    const double t = ctx.t_left() + tau * quad.nodes[j];
    ctx.values(t, u.data(), ut.data());
    wf.residual(t, u.data(), ut.data(), r.data());
    for (int i = 0; i < n_eq; ++i) {
      if (!std::isfinite(r[i]))
        throw EvaluationError("residual non-finite at quadrature point", t, u);
    }
    for (int k = 0; k <= q; ++k) {
      double w;
      if (wf.test_weight)
        w = wf.test_weight(k, t, u.data(), ctx);
      else if (ctx.reference_nodes)
        w = reference_basis(q).value(k, quad.nodes[j]);
      else
        w = lagrange_value(ctx.test_nodes, k, t);
      const double scale = tau * quad.weights[j] * w;
      for (int i = 0; i < n_eq; ++i) out[static_cast<std::size_t>(i) * (q + 1) + k] += scale * r[i];
    }
  }
  return out;
}

namespace {

struct UnknownMap {
  int n_eq, q;
  std::size_t count() const { return static_cast<std::size_t>(n_eq) * (q + 1); }
  // Unknowns are trial nodes 1..q+1 of each component.
  double get(const ElementContext& ctx, std::size_t idx) const {
    const int c = static_cast<int>(idx) / (q + 1);
    const int m = static_cast<int>(idx) % (q + 1) + 1;
    return ctx.nodal[c][m];
  }
  void set(ElementContext& ctx, std::size_t idx, double v) const {
    const int c = static_cast<int>(idx) / (q + 1);
    const int m = static_cast<int>(idx) % (q + 1) + 1;
    ctx.nodal[c][m] = v;
  }
};

}  // namespace

NewtonResult newton_solve_element(const WeakForm& wf, const ElementContext& guess,
                                  const NewtonConfig& cfg, const QuadratureRule& quad) {
  NewtonResult result;
  result.ctx = guess;
  const UnknownMap map{wf.n_eq, wf.q};
  const std::size_t n = map.count();

  Vec r;
  try {
    r = assemble_element_residual(wf, result.ctx, quad);
  } catch (const EvaluationError& e) {
    result.reason = std::string("initial guess inadmissible: ") + e.what();
    return result;
  }

  for (int it = 0; it < cfg.max_iterations; ++it) {
    result.iterations = it;
    if (!all_finite(r)) {
      result.reason = "non-finite residual";
      return result;
    }
    const double rn = inf_norm(r);
    if (rn <= cfg.tolerance) {
      result.converged = true;
      return result;
    }
    if (rn > cfg.divergence_threshold) {
      result.reason = "residual above divergence threshold";
      return result;
    }

    Mat jac(n, n);
    if (wf.jacobian) {
      // Closed-form residual Jacobian, chained through the trial basis.
      const double tau = result.ctx.tau();
      Vec u(wf.n_eq), ut(wf.n_eq);
      Mat dr_du(wf.n_eq, wf.n_eq), dr_dut(wf.n_eq, wf.n_eq);
      for (int j = 0; j < quad.size(); ++j) {
        const double t = result.ctx.t_left() + tau * quad.nodes[j];
        result.ctx.values(t, u.data(), ut.data());
        wf.jacobian(t, u.data(), ut.data(), dr_du, dr_dut);
        for (int k = 0; k <= wf.q; ++k) {
          double w;
          if (wf.test_weight)
            w = wf.test_weight(k, t, u.data(), result.ctx);
          else if (result.ctx.reference_nodes)
            w = reference_basis(wf.q).value(k, quad.nodes[j]);
          else
            w = lagrange_value(result.ctx.test_nodes, k, t);
          const double scale = tau * quad.weights[j] * w;
          for (std::size_t col = 0; col < n; ++col) {
            const int cc = static_cast<int>(col) / (wf.q + 1);
            const int mm = static_cast<int>(col) % (wf.q + 1) + 1;
            double bv, bd;
            if (result.ctx.reference_nodes) {
              const LagrangeBasis& basis = reference_basis(wf.q + 1);
              bv = basis.value(mm, quad.nodes[j]);
              bd = basis.derivative(mm, quad.nodes[j]) / tau;
            } else {
              bv = lagrange_value(result.ctx.trial_nodes, mm, t);
              bd = lagrange_derivative(result.ctx.trial_nodes, mm, t);
            }
            for (int i = 0; i < wf.n_eq; ++i)
              jac(static_cast<std::size_t>(i) * (wf.q + 1) + k, col) +=
                  scale * (dr_du(i, cc) * bv + dr_dut(i, cc) * bd);
          }
        }
      }
    } else {
      // Forward differences; fall back to a backward step when the forward
      // perturbation leaves the admissible set.
      for (std::size_t col = 0; col < n; ++col) {
        const double x0 = map.get(result.ctx, col);
        const double h = cfg.fd_step * (1.0 + std::abs(x0));
        Vec rp;
        double used = h;
        ElementContext probe = result.ctx;
        try {
          map.set(probe, col, x0 + h);
          rp = assemble_element_residual(wf, probe, quad);
        } catch (const EvaluationError&) {
          used = -h;
          map.set(probe, col, x0 - h);
          try {
            rp = assemble_element_residual(wf, probe, quad);
          } catch (const EvaluationError&) {
            result.reason = "Jacobian evaluation left admissible set";
            return result;
          }
        }
        for (std::size_t row = 0; row < n; ++row) jac(row, col) = (rp[row] - r[row]) / used;
      }
    }

    Vec rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -r[i];
    Vec delta;
    try {
      delta = lu_solve(jac, rhs);
    } catch (const SingularMatrixError&) {
      result.reason = "singular Newton system";
      return result;
    }
    if (!all_finite(delta)) {
      result.reason = "non-finite Newton step";
      return result;
    }

    // Full step; halve only when the step lands on an inadmissible state
    // (e.g. a negative square-root argument inside the residual).
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= cfg.max_step_halvings; ++halving) {
      ElementContext trial = result.ctx;
      for (std::size_t i = 0; i < n; ++i)
        map.set(trial, i, map.get(result.ctx, i) + lambda * delta[i]);
      try {
        Vec rt = assemble_element_residual(wf, trial, quad);
        result.ctx = trial;
        r = std::move(rt);
        accepted = true;
        // Residuals with small state-dependent denominators have a roundoff
        // floor that can sit just above the tolerance; once the increment is
        // at machine precision relative to the iterate, no further progress
        // is possible and the iterate is accepted.
        double step_norm = 0.0, x_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          step_norm = std::max(step_norm, std::abs(lambda * delta[i]));
          x_norm = std::max(x_norm, std::abs(map.get(result.ctx, i)));
        }
        if (all_finite(r) && step_norm <= 1e-14 * (1.0 + x_norm) &&
            inf_norm(r) <= std::sqrt(cfg.tolerance)) {
          result.converged = true;
          result.iterations = it + 1;
          return result;
        }
        break;
      } catch (const EvaluationError&) {
        lambda *= 0.5;
      }
    }
    if (!accepted) {
      result.reason = "step halving exhausted on inadmissible states";
      return result;
    }
  }

  result.reason = "maximum iterations reached";
  return result;
}

Trajectory::Trajectory(TimeMesh mesh, int q, int n_eq, const Vec& initial)
    : mesh_(std::move(mesh)), q_(q), n_eq_(n_eq) {
  if (static_cast<int>(initial.size()) != n_eq)
    throw ParameterError("Trajectory: initial value size mismatch");
  const std::size_t n_nodes = mesh_.n_elements() * nodes_per_element() + 1;
  coeff_.assign(n_eq_, Vec(n_nodes, 0.0));
  for (int c = 0; c < n_eq_; ++c) coeff_[c][0] = initial[c];
}

void Trajectory::set_element(std::size_t n, const ElementContext& ctx) {
  const std::size_t base = n * nodes_per_element();
  for (int c = 0; c < n_eq_; ++c)
    for (std::size_t m = 0; m < nodes_per_element() + 1; ++m)
      coeff_[c][base + m] = ctx.nodal[c][m];
  completed_ = std::max(completed_, n + 1);
}

ElementContext Trajectory::element_context(std::size_t n) const {
  ElementContext ctx = ElementContext::constant_guess(mesh_, n, q_, Vec(n_eq_, 0.0));
  const std::size_t base = n * nodes_per_element();
  for (int c = 0; c < n_eq_; ++c)
    for (std::size_t m = 0; m < nodes_per_element() + 1; ++m)
      ctx.nodal[c][m] = coeff_[c][base + m];
  return ctx;
}

void Trajectory::evaluate(double t, double* u, double* ut) const {
  const std::size_t n = mesh_.element_of(t);
  element_context(n).values(t, u, ut);
}

Vec Trajectory::value(double t) const {
  Vec u(n_eq_), ut(n_eq_);
  evaluate(t, u.data(), ut.data());
  return u;
}

double Trajectory::node_value(int comp, std::size_t i) const {
  return coeff_[comp][i * nodes_per_element()];
}

IntegrateResult integrate(const WeakForm& wf, const TimeMesh& mesh, const Vec& initial,
                          const IntegrateOptions& opts, const QuadratureRule& quad) {
  if (static_cast<int>(initial.size()) != wf.n_eq)
    throw ParameterError("integrate: initial value size mismatch");
  IntegrateResult result{Trajectory(mesh, wf.q, wf.n_eq, initial), std::nullopt};

  Vec left = initial;
  for (std::size_t n = 0; n < mesh.n_elements(); ++n) {
    ElementContext guess = ElementContext::constant_guess(mesh, n, wf.q, left);
    if (opts.guess == GuessStrategy::PreviousSlope && n > 0) {
      const ElementContext prev = result.trajectory.element_context(n - 1);
      for (int c = 0; c < wf.n_eq; ++c)
        for (std::size_t m = 1; m < guess.trial_nodes.size(); ++m)
          guess.nodal[c][m] = prev.value(c, guess.trial_nodes[m]);
    }
    NewtonResult solved = newton_solve_element(wf, guess, opts.newton, quad);
    if (!solved.converged) {
      result.failed_element = n;
      return result;
    }
    result.trajectory.set_element(n, solved.ctx);
    for (int c = 0; c < wf.n_eq; ++c) left[c] = solved.ctx.nodal[c].back();
  }
  return result;
}

}  // namespace symcg

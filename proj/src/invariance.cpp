#include "symcg/invariance.hpp"

#include <cmath>
#include <limits>

#include "symcg/errors.hpp"

namespace symcg {

namespace {

double poly_derivative(const Vec& coeffs, int order, double t) {
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (static_cast<int>(k) < order) break;
    double c = coeffs[k];
    for (int d = 0; d < order; ++d) c *= static_cast<double>(k - d);
    v += c * std::pow(t, static_cast<double>(k) - order);
  }
  return v;
}

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

SmoothCurve polynomial_jet_curve(const Vec& coeffs, int n_eq, double t_lo, double t_hi) {
  SmoothCurve c;
  c.t_lo = t_lo;
  c.t_hi = t_hi;
  c.value = [coeffs, n_eq](double t) {
    Vec u(n_eq);
    for (int i = 0; i < n_eq; ++i) u[i] = poly_derivative(coeffs, i, t);
    return u;
  };
  c.derivative = [coeffs, n_eq](double t) {
    Vec ut(n_eq);
    for (int i = 0; i < n_eq; ++i) ut[i] = poly_derivative(coeffs, i + 1, t);
    return ut;
  };
  return c;
}

namespace {

// Element context whose nodes are the images of the original nodes under g:
// node times via the point action, node values the transformed values.
ElementContext transformed_context(const GroupAction& action, const GroupElement& g,
                                   const SmoothCurve& curve, const ElementContext& element) {
  ElementContext out = element;
  out.reference_nodes = false;
  const int n_eq = static_cast<int>(element.nodal.size());
  for (std::size_t i = 0; i < element.trial_nodes.size(); ++i) {
    const double ti = element.trial_nodes[i];
    const Vec u = curve.value(ti);
    double th;
    Vec uh(n_eq);
    action.apply(g, ti, u.data(), &th, uh.data());
    out.trial_nodes[i] = th;
    for (int c = 0; c < n_eq; ++c) out.nodal[c][i] = uh[c];
  }
  for (std::size_t j = 0; j < element.test_nodes.size(); ++j) {
    const double tj = element.test_nodes[j];
    const Vec u = curve.value(tj);
    double th;
    Vec uh(n_eq);
    action.apply(g, tj, u.data(), &th, uh.data());
    out.test_nodes[j] = th;
  }
  return out;
}

}  // namespace

LiftedFunctionalResult lifted_functional(const WeakForm& wf, const GroupAction& action,
                                         const GroupElement& g, const SmoothCurve& curve,
                                         const ElementContext& element,
                                         const QuadratureRule& quad) {
  const int q = wf.q;
  const ElementContext tctx = transformed_context(action, g, curve, element);

  LiftedFunctionalResult result;
  result.residual.assign(static_cast<std::size_t>(wf.n_eq) * (q + 1), 0.0);
  result.t_left = tctx.trial_nodes.front();
  result.t_right = tctx.trial_nodes.back();

  const double tau = element.tau();
  Vec r(wf.n_eq);
  double measure_sign = 0.0;
  for (int j = 0; j < quad.size(); ++j) {
    const double t = element.t_left() + tau * quad.nodes[j];
    const Vec u = curve.value(t);
    const Vec ut = curve.derivative(t);
    const JetImage z = action.apply_jet(g, t, u, ut);
    if (z.dt_dt == 0.0 || (measure_sign != 0.0 && z.dt_dt * measure_sign < 0.0))
      throw FoldError("transformed time is not monotone on the element");
    measure_sign = z.dt_dt > 0.0 ? 1.0 : -1.0;

    wf.residual(z.t, z.u.data(), z.ut.data(), r.data());
    for (int k = 0; k <= q; ++k) {
      const double w = wf.test_weight ? wf.test_weight(k, z.t, z.u.data(), tctx)
                                      : lagrange_value(tctx.test_nodes, k, z.t);
      const double scale = tau * quad.weights[j] * z.dt_dt * w;
      for (int i = 0; i < wf.n_eq; ++i)
        result.residual[static_cast<std::size_t>(i) * (q + 1) + k] += scale * r[i];
    }
  }
  return result;
}

double invariance_defect(const WeakForm& wf, const GroupAction& action, const SmoothCurve& curve,
                         const ElementContext& element,
                         const std::vector<GroupElement>& g_samples,
                         const QuadratureRule& quad) {
  const Vec base = lifted_functional(wf, action, action.identity(), curve, element, quad).residual;
  double defect = 0.0;
  for (const GroupElement& g : g_samples) {
    const Vec lifted = lifted_functional(wf, action, g, curve, element, quad).residual;
    for (std::size_t i = 0; i < base.size(); ++i)
      defect = std::max(defect, std::abs(lifted[i] - base[i]));
  }
  return defect;
}

std::function<JetImage(double)> prolong_curve(const GroupAction& action, const GroupElement& g,
                                              const SmoothCurve& curve) {
  return [&action, g, curve](double t) {
    return action.apply_jet(g, t, curve.value(t), curve.derivative(t));
  };
}

WeakForm invariantize_pointwise(const WeakForm& wf_standard, const GroupAction& action,
                                const MovingFrame& mf) {
  WeakForm out;
  out.n_eq = wf_standard.n_eq;
  out.q = wf_standard.q;
  out.name = wf_standard.name + "+invariantized";

  const int n_eq = wf_standard.n_eq;
  out.residual = [wf_standard, action, mf, n_eq](double t, const double* u, const double* ut,
                                                 double* res) {
    const Vec uv(u, u + n_eq), utv(ut, ut + n_eq);
    if (mf.admissible && !mf.admissible(t, uv, utv))
      throw FrameDomainError("state outside the frame's domain");
    const GroupElement rho = mf.frame(t, uv, utv);
    const JetImage z = action.apply_jet(rho, t, uv, utv);
    wf_standard.residual(z.t, z.u.data(), z.ut.data(), res);
    // the lifted measure factor stays inside the integrand rows
    for (int i = 0; i < n_eq; ++i) res[i] *= z.dt_dt;
  };
  out.test_weight = [action, mf, n_eq](int k, double t, const double* u,
                                       const ElementContext& ctx) {
    const Vec uv(u, u + n_eq);
    const Vec zero(n_eq, 0.0);
    const GroupElement rho = mf.frame(t, uv, zero);
    std::vector<double> img(ctx.test_nodes.size());
    Vec un(n_eq), uh(n_eq);
    for (std::size_t j = 0; j < ctx.test_nodes.size(); ++j) {
      const double tj = ctx.test_nodes[j];
      for (int c = 0; c < n_eq; ++c) un[c] = ctx.value(c, tj);
      action.apply(rho, tj, un.data(), &img[j], uh.data());
    }
    double th;
    action.apply(rho, t, u, &th, uh.data());
    return lagrange_value(img, k, th);
  };
  return out;
}

AugmentedResult integrate_augmented(const WeakForm& wf_standard, const GroupAction& action,
                                    const std::vector<CrossSectionEntry>& cs,
                                    const TimeMesh& mesh, const Vec& initial,
                                    const NewtonConfig& cfg, const QuadratureRule& quad) {
  const int q = wf_standard.q;
  const int n_eq = wf_standard.n_eq;
  const int n_nodal = n_eq * (q + 1);
  const int n_norm = static_cast<int>(cs.size()) + (action.chart_constraint ? 1 : 0);
  if (n_norm != action.r)
    throw ParameterError("integrate_augmented: normalisations do not match parameter count");
  const std::size_t n_unknown = static_cast<std::size_t>(n_nodal + action.r);

  AugmentedResult result{Trajectory(mesh, q, n_eq, initial), std::nullopt, {}};

  auto residual_of = [&](const ElementContext& ctx, const GroupElement& g) {
    SmoothCurve c;
    c.t_lo = ctx.t_left();
    c.t_hi = ctx.t_right();
    c.value = [&ctx, n_eq](double t) {
      Vec u(n_eq);
      for (int i = 0; i < n_eq; ++i) u[i] = ctx.value(i, t);
      return u;
    };
    c.derivative = [&ctx, n_eq](double t) {
      Vec ut(n_eq);
      for (int i = 0; i < n_eq; ++i) ut[i] = ctx.derivative(i, t);
      return ut;
    };
    Vec res = lifted_functional(wf_standard, action, g, c, ctx, quad).residual;
    res.resize(n_unknown);

    // normalisation equations at the left endpoint
    const double tn = ctx.t_left();
    Vec u(n_eq), ut(n_eq);
    ctx.values(tn, u.data(), ut.data());
    const JetImage z = action.apply_jet(g, tn, u, ut);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      double target = cs[i].target;
      if (cs[i].use_abs) {
        const JetImage orig{tn, u, ut, 1.0};
        target *= jet_coordinate(orig, cs[i].coord) < 0.0 ? -1.0 : 1.0;
      }
      res[n_nodal + i] = jet_coordinate(z, cs[i].coord) - target;
    }
    if (action.chart_constraint)
      res[n_nodal + cs.size()] = action.chart_constraint(g);
    return res;
  };

  auto get = [&](const ElementContext& ctx, const GroupElement& g, std::size_t idx) {
    if (idx < static_cast<std::size_t>(n_nodal))
      return ctx.nodal[idx / (q + 1)][idx % (q + 1) + 1];
    return g.params[idx - n_nodal];
  };
  auto set = [&](ElementContext& ctx, GroupElement& g, std::size_t idx, double v) {
    if (idx < static_cast<std::size_t>(n_nodal))
      ctx.nodal[idx / (q + 1)][idx % (q + 1) + 1] = v;
    else
      g.params[idx - n_nodal] = v;
  };

  Vec left = initial;
  GroupElement g = action.identity();
  for (std::size_t n = 0; n < mesh.n_elements(); ++n) {
    ElementContext ctx = ElementContext::constant_guess(mesh, n, q, left);
    bool converged = false;
    Vec r;
    try {
      r = residual_of(ctx, g);
    } catch (const EvaluationError&) {
      r.assign(n_unknown, std::numeric_limits<double>::quiet_NaN());
    }
    for (int it = 0; it < cfg.max_iterations && all_finite(r); ++it) {
      if (inf_norm(r) <= cfg.tolerance) {
        converged = true;
        break;
      }
      if (inf_norm(r) > cfg.divergence_threshold) break;
      Mat jac(n_unknown, n_unknown);
      for (std::size_t col = 0; col < n_unknown; ++col) {
        const double x0 = get(ctx, g, col);
        const double h = cfg.fd_step * (1.0 + std::abs(x0));
        ElementContext pc = ctx;
        GroupElement pg = g;
        set(pc, pg, col, x0 + h);
        Vec rp;
        double used = h;
        try {
          rp = residual_of(pc, pg);
        } catch (const EvaluationError&) {
          used = -h;
          set(pc, pg, col, x0 - h);
          rp = residual_of(pc, pg);
        }
        for (std::size_t row = 0; row < n_unknown; ++row)
          jac(row, col) = (rp[row] - r[row]) / used;
      }
      Vec rhs(n_unknown);
      for (std::size_t i = 0; i < n_unknown; ++i) rhs[i] = -r[i];
      Vec delta;
      try {
        delta = lu_solve(jac, rhs);
      } catch (const SingularMatrixError&) {
        break;
      }
      double lambda = 1.0;
      bool accepted = false;
      for (int halving = 0; halving <= cfg.max_step_halvings; ++halving) {
        ElementContext tc = ctx;
        GroupElement tg = g;
        for (std::size_t i = 0; i < n_unknown; ++i)
          set(tc, tg, i, get(ctx, g, i) + lambda * delta[i]);
        try {
          Vec rt = residual_of(tc, tg);
          if (!all_finite(rt)) throw EvaluationError("non-finite residual", 0.0, {});
          ctx = tc;
          g = tg;
          r = std::move(rt);
          accepted = true;
          break;
        } catch (const EvaluationError&) {
          lambda *= 0.5;
        } catch (const FoldError&) {
          lambda *= 0.5;
        } catch (const FrameDomainError&) {
          lambda *= 0.5;
        }
      }
      if (!accepted) break;
    }
    if (!converged) {
      result.failed_element = n;
      return result;
    }
    result.trajectory.set_element(n, ctx);
    result.frames.push_back(g);
    for (int c = 0; c < n_eq; ++c) left[c] = ctx.nodal[c].back();
  }
  return result;
}

}  // namespace symcg

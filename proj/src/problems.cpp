#include "symcg/problems.hpp"

#include <cmath>
#include <map>

#include "symcg/errors.hpp"

namespace symcg {

namespace {

double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int sgn(double x) { return x < 0.0 ? -1 : 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Working example: v_t = u^{-1} v^2, u_t = v, with the two-parameter action
//   t -> t,  u -> e^{at+b} u,  v -> (a u + v) e^{at+b}.

ProblemInstance working_example(bool growth) {
  ProblemInstance p;
  p.name = growth ? "working-growth" : "working";
  p.n_eq = 2;
  p.t_start = 0.0;
  p.t_end = 10.0;
  p.initial = growth ? Vec{-1.0, -1.0} : Vec{1.0, -1.0};
  p.exact = growth ? std::function<Vec(double)>([](double t) {
    return Vec{-std::exp(t), -std::exp(t)};
  })
                   : std::function<Vec(double)>([](double t) {
                       return Vec{std::exp(-t), -std::exp(-t)};
                     });

  p.standard_form = [name = p.name](int q) {
    WeakForm wf;
    wf.n_eq = 2;
    wf.q = q;
    wf.name = name + "/standard";
    wf.residual = [](double, const double* u, const double* ut, double* out) {
      out[0] = ut[1] - u[1] * u[1] / u[0];
      out[1] = ut[0] - u[1];
    };
    return wf;
  };
  p.invariant_form = [name = p.name](int q) {
    WeakForm wf;
    wf.n_eq = 2;
    wf.q = q;
    wf.name = name + "/invariant";
    wf.residual = [](double, const double* u, const double* ut, double* out) {
      out[0] = (ut[1] - u[1] * u[1] / u[0]) / u[0];
      out[1] = (ut[0] - u[1]) / u[0];
    };
    return wf;
  };

  p.action.r = 2;
  p.action.n_eq = 2;
  p.action.name = "scaling(a,b)";
  p.action.apply = [](const GroupElement& g, double t, const double* u, double* t_out,
                      double* u_out) {
    const double a = g.params[0], b = g.params[1];
    const double m = std::exp(a * t + b);
    *t_out = t;
    u_out[0] = m * u[0];
    u_out[1] = (a * u[0] + u[1]) * m;
  };
  p.action.apply_jet = [](const GroupElement& g, double t, const Vec& u, const Vec& ut) {
    const double a = g.params[0], b = g.params[1];
    const double m = std::exp(a * t + b);
    JetImage z;
    z.t = t;
    z.dt_dt = 1.0;
    z.u = {m * u[0], m * (a * u[0] + u[1])};
    z.ut = {m * (a * u[0] + ut[0]),
            m * (a * a * u[0] + a * u[1] + a * ut[0] + ut[1])};
    return z;
  };
  p.action.compose = [](const GroupElement& g1, const GroupElement& g2) {
    return GroupElement{{g1.params[0] + g2.params[0], g1.params[1] + g2.params[1]}};
  };
  p.action.inverse = [](const GroupElement& g) {
    return GroupElement{{-g.params[0], -g.params[1]}};
  };
  p.action.admissible = [](const GroupElement&, double, const Vec&) { return true; };

  p.frame.frame = [](double t, const Vec& u, const Vec&) {
    const double a = -u[1] / u[0];
    const double b = t * u[1] / u[0] - std::log(std::abs(u[0]));
    return GroupElement{{a, b}};
  };
  p.frame.admissible = [](double, const Vec& u, const Vec&) { return u[0] != 0.0; };
  p.cross_section = {{1, 1.0, true}, {2, 0.0, false}};

  p.admissible = [](double, const Vec& u, const Vec&) { return std::abs(u[0]) > 1e-8; };
  p.sample_state = [](std::mt19937& rng, bool negate, double& t, Vec& u, Vec& ut) {
    t = uniform(rng, 0.0, 2.0);
    const double y = uniform(rng, 0.5, 1.5) * (negate ? -1.0 : 1.0);
    const double yt = uniform(rng, -0.5, 0.5);
    u = {y, yt};
    ut = {yt, uniform(rng, -1.0, 1.0)};
  };
  return p;
}

// ---------------------------------------------------------------------------
// Schwarzian problem: third-order scalar equation written as a system in
// (u, v, w) = (y, y_t, y_tt), invariant under the Moebius action on u.

ProblemInstance schwarzian() {
  ProblemInstance p;
  p.name = "schwarzian";
  p.n_eq = 3;
  p.t_start = 0.0;
  p.t_end = 1000.0;
  p.initial = {1.0, -1.0, 1.0};
  p.exact = [](double t) {
    const double d = 2.0 + t;
    return Vec{4.0 / d - 1.0, -4.0 / (d * d), 8.0 / (d * d * d)};
  };

  p.standard_form = [](int q) {
    WeakForm wf;
    wf.n_eq = 3;
    wf.q = q;
    wf.name = "schwarzian/standard";
    wf.residual = [](double, const double* u, const double* ut, double* out) {
      const double v = u[1], w = u[2];
      out[0] = ut[2] / v - 1.5 * (w / v) * (w / v);
      out[1] = ut[0] - v;
      out[2] = ut[1] - w;
    };
    // Closed form: finite differencing this Jacobian is hopeless at large t,
    // where |w| ~ 1e-8 is dwarfed by any absolute perturbation step.
    wf.jacobian = [](double, const double* u, const double* ut, Mat& du, Mat& dut) {
      const double v = u[1], w = u[2], v2 = v * v, v3 = v2 * v;
      du = Mat(3, 3);
      dut = Mat(3, 3);
      du(0, 1) = -ut[2] / v2 + 3.0 * w * w / v3;
      du(0, 2) = -3.0 * w / v2;
      dut(0, 2) = 1.0 / v;
      du(1, 1) = -1.0;
      dut(1, 0) = 1.0;
      du(2, 2) = -1.0;
      dut(2, 1) = 1.0;
    };
    return wf;
  };
  p.invariant_form = [](int q) {
    WeakForm wf;
    wf.n_eq = 3;
    wf.q = q;
    wf.name = "schwarzian/invariant";
    wf.residual = [](double, const double* u, const double* ut, double* out) {
      const double v = u[1], w = u[2];
      out[0] = ut[2] / v - 2.0 * ut[1] * w / (v * v) + 0.5 * ut[0] * w * w / (v * v * v);
      out[1] = (ut[0] - v) / v;
      // algebraically w*(v^2 - v*u_t)/v^3; the factored form avoids the
      // cancellation v^2 - v*u_t when u_t tracks v closely
      out[2] = (ut[1] - w) / v + w * (v - ut[0]) / (v * v);
    };
    wf.jacobian = [](double, const double* u, const double* ut, Mat& du, Mat& dut) {
      const double v = u[1], w = u[2];
      const double v2 = v * v, v3 = v2 * v, v4 = v3 * v;
      du = Mat(3, 3);
      dut = Mat(3, 3);
      du(0, 1) = -ut[2] / v2 + 4.0 * ut[1] * w / v3 - 1.5 * ut[0] * w * w / v4;
      du(0, 2) = -2.0 * ut[1] / v2 + ut[0] * w / v3;
      dut(0, 0) = 0.5 * w * w / v3;
      dut(0, 1) = -2.0 * w / v2;
      dut(0, 2) = 1.0 / v;
      du(1, 1) = -ut[0] / v2;
      dut(1, 0) = 1.0 / v;
      du(2, 1) = -(ut[1] - w) / v2 - w / v2 + 2.0 * w * ut[0] / v3;
      du(2, 2) = -1.0 / v + (v - ut[0]) / v2;
      dut(2, 0) = -w / v2;
      dut(2, 1) = 1.0 / v;
      return;
    };
    return wf;
  };

  p.action.r = 4;
  p.action.n_eq = 3;
  p.action.name = "sl2-mobius-u";
  p.action.identity_params = {1.0, 0.0, 0.0, 1.0};
  p.action.apply = [](const GroupElement& g, double t, const double* u, double* t_out,
                      double* u_out) {
    const double al = g.params[0], be = g.params[1], ga = g.params[2], de = g.params[3];
    const double D = ga * u[0] + de;
    *t_out = t;
    u_out[0] = (al * u[0] + be) / D;
    u_out[1] = u[1] / (D * D);
    u_out[2] = u[2] / (D * D) - 2.0 * ga * u[1] * u[1] / (D * D * D);
  };
  p.action.apply_jet = [](const GroupElement& g, double t, const Vec& u, const Vec& ut) {
    const double al = g.params[0], be = g.params[1], ga = g.params[2], de = g.params[3];
    const double D = ga * u[0] + de;
    const double D2 = D * D, D3 = D2 * D, D4 = D3 * D;
    JetImage z;
    z.t = t;
    z.dt_dt = 1.0;
    z.u = {(al * u[0] + be) / D, u[1] / D2, u[2] / D2 - 2.0 * ga * u[1] * u[1] / D3};
    z.ut = {ut[0] / D2,
            ut[1] / D2 - 2.0 * u[1] * ga * ut[0] / D3,
            ut[2] / D2 - 2.0 * ga * u[2] * ut[0] / D3 - 4.0 * ga * u[1] * ut[1] / D3 +
                6.0 * ga * ga * u[1] * u[1] * ut[0] / D4};
    return z;
  };
  auto sl2_compose = [](const GroupElement& g1, const GroupElement& g2) {
    // matrix product M2 * M1 ("apply g1 first")
    const double a1 = g1.params[0], b1 = g1.params[1], c1 = g1.params[2], d1 = g1.params[3];
    const double a2 = g2.params[0], b2 = g2.params[1], c2 = g2.params[2], d2 = g2.params[3];
    return GroupElement{{a2 * a1 + b2 * c1, a2 * b1 + b2 * d1, c2 * a1 + d2 * c1,
                         c2 * b1 + d2 * d1}};
  };
  p.action.compose = sl2_compose;
  p.action.inverse = [](const GroupElement& g) {
    return GroupElement{{g.params[3], -g.params[1], -g.params[2], g.params[0]}};
  };
  p.action.chart_constraint = [](const GroupElement& g) {
    return g.params[0] * g.params[3] - g.params[1] * g.params[2] - 1.0;
  };
  p.action.admissible = [](const GroupElement& g, double, const Vec& u) {
    return std::abs(g.params[2] * u[0] + g.params[3]) > 1e-6;
  };

  p.frame.frame = [](double, const Vec& u, const Vec&) {
    const double v = u[1], w = u[2];
    const double sv = std::sqrt(v);
    const double al = 1.0 / sv;
    const double be = -u[0] / sv;
    const double ga = 0.5 * w / (v * sv);
    const double de = sv - 0.5 * u[0] * w / (v * sv);
    return GroupElement{{al, be, ga, de}};
  };
  p.frame.admissible = [](double, const Vec& u, const Vec&) { return u[1] > 1e-10; };
  p.frame.double_cover = true;
  p.cross_section = {{1, 0.0, false}, {2, 1.0, false}, {3, 0.0, false}};

  p.admissible = [](double, const Vec& u, const Vec&) { return u[1] > 1e-8; };
  p.sample_state = [](std::mt19937& rng, bool, double& t, Vec& u, Vec& ut) {
    t = uniform(rng, 0.0, 2.0);
    const double y = uniform(rng, -1.0, 1.0);
    const double yt = uniform(rng, 0.5, 1.5);  // frame branch needs v > 0
    const double ytt = uniform(rng, -1.0, 1.0);
    u = {y, yt, ytt};
    ut = {yt, ytt, uniform(rng, -1.0, 1.0)};
  };
  return p;
}

// ---------------------------------------------------------------------------
// Quasi-linear problem: t^2 v_t + 4t u_t + 2u = sqrt(2tu + t^2 u_t), u_t = v,
// with the affine time action t -> e^a t + b.

namespace {

double ql_sqrt(double t, const double* u, const double* ut) {
  const double arg = 2.0 * t * u[0] + t * t * ut[0];
  if (arg < 0.0)
    throw EvaluationError("negative square-root argument", t, Vec{u[0], u[1]});
  return std::sqrt(arg);
}

}  // namespace

ProblemInstance quasi_linear() {
  ProblemInstance p;
  p.name = "quasilinear";
  p.n_eq = 2;
  p.t_start = 1.0;
  p.t_end = 1000.0;
  p.initial = {1.0, 2.0};
  p.exact = [](double t) {
    const double t2 = t * t, t3 = t2 * t;
    return Vec{(t3 + 9.0 * t2 + 27.0 * t - 25.0) / (12.0 * t2),
               (t3 - 27.0 * t + 50.0) / (12.0 * t3)};
  };

  p.standard_form = [](int q) {
    WeakForm wf;
    wf.n_eq = 2;
    wf.q = q;
    wf.name = "quasilinear/standard";
    wf.residual = [](double t, const double* u, const double* ut, double* out) {
      out[0] = t * t * ut[1] + 4.0 * t * ut[0] + 2.0 * u[0] - ql_sqrt(t, u, ut);
      out[1] = ut[0] - u[1];
    };
    return wf;
  };
  p.invariant_form = [](int q) {
    WeakForm wf;
    wf.n_eq = 2;
    wf.q = q;
    wf.name = "quasilinear/invariant";
    wf.residual = [](double t, const double* u, const double* ut, double* out) {
      const double s = u[0] + 0.5 * t * u[1];
      const double std0 = t * t * ut[1] + 4.0 * t * ut[0] + 2.0 * u[0] - ql_sqrt(t, u, ut);
      out[0] = u[0] / (s * s * s * s) *
               (u[0] * std0 - t * t * u[1] * (u[1] - ut[0]));
      out[1] = (ut[0] - u[1]) / u[0];
    };
    return wf;
  };

  p.action.r = 2;
  p.action.n_eq = 2;
  p.action.name = "affine-time(a,b)";
  p.action.apply = [](const GroupElement& g, double t, const double* u, double* t_out,
                      double* u_out) {
    const double a = g.params[0], b = g.params[1];
    const double ea = std::exp(a), E = ea * t + b;
    *t_out = E;
    u_out[0] = std::exp(3.0 * a) * t * t * u[0] / (E * E);
    u_out[1] = std::exp(2.0 * a) * t * t * u[1] / (E * E) +
               2.0 * std::exp(2.0 * a) * b * t * u[0] / (E * E * E);
  };
  p.action.apply_jet = [](const GroupElement& g, double t, const Vec& u, const Vec& ut) {
    const double a = g.params[0], b = g.params[1];
    const double ea = std::exp(a), e2a = ea * ea, e3a = e2a * ea;
    const double E = ea * t + b, E2 = E * E, E3 = E2 * E, E4 = E3 * E;
    JetImage z;
    z.t = E;
    z.dt_dt = ea;
    z.u = {e3a * t * t * u[0] / E2, e2a * t * t * u[1] / E2 + 2.0 * e2a * b * t * u[0] / E3};
    z.ut = {e2a * ((2.0 * t * u[0] + t * t * ut[0]) / E2 - 2.0 * ea * t * t * u[0] / E3),
            ea * ((2.0 * t * u[1] + t * t * ut[1]) / E2 - 2.0 * ea * t * t * u[1] / E3 +
                  2.0 * b * (u[0] + t * ut[0]) / E3 - 6.0 * ea * b * t * u[0] / E4)};
    return z;
  };
  p.action.compose = [](const GroupElement& g1, const GroupElement& g2) {
    return GroupElement{{g1.params[0] + g2.params[0],
                         std::exp(g2.params[0]) * g1.params[1] + g2.params[1]}};
  };
  p.action.inverse = [](const GroupElement& g) {
    return GroupElement{{-g.params[0], -std::exp(-g.params[0]) * g.params[1]}};
  };
  p.action.admissible = [](const GroupElement& g, double t, const Vec&) {
    return std::abs(std::exp(g.params[0]) * t + g.params[1]) > 1e-6 && std::abs(t) > 1e-6;
  };

  p.frame.frame = [](double t, const Vec& u, const Vec&) {
    const double s = u[0] + 0.5 * t * u[1];
    const double a = std::log(std::abs(u[0]) / (s * s));
    const double b = -sgn(u[0]) * t * t * u[0] * u[1] / (2.0 * s * s * s);
    return GroupElement{{a, b}};
  };
  p.frame.admissible = [](double t, const Vec& u, const Vec&) {
    return u[0] != 0.0 && u[0] + 0.5 * t * u[1] != 0.0 && t != 0.0;
  };
  p.cross_section = {{1, 1.0, true}, {2, 0.0, false}};

  p.admissible = [](double t, const Vec& u, const Vec& ut) {
    return t > 1e-6 && std::abs(u[0]) > 1e-8 && std::abs(u[0] + 0.5 * t * u[1]) > 1e-8 &&
           2.0 * t * u[0] + t * t * ut[0] >= 0.0;
  };
  p.sample_state = [](std::mt19937& rng, bool negate, double& t, Vec& u, Vec& ut) {
    t = uniform(rng, 1.0, 2.0);
    if (!negate) {
      const double y = uniform(rng, 0.5, 1.5);
      const double yt = uniform(rng, 0.2, 1.2);
      u = {y, yt};
      ut = {yt, uniform(rng, -0.5, 0.5)};
    } else {
      // u < 0 branch: keep sqrt(2tu + t^2 u_t) real via a large positive slope
      const double y = uniform(rng, -1.5, -0.5);
      const double yt = uniform(rng, 4.0, 6.0);
      u = {y, yt};
      ut = {yt, uniform(rng, -0.5, 0.5)};
    }
  };
  return p;
}

// ---------------------------------------------------------------------------
// Non-projectable problem: u_t / (u - t u_t) = C, with the action
//   t -> t + alpha u,  u -> e^beta u.

ProblemInstance non_projectable(double C, double y0) {
  ProblemInstance p;
  p.name = "noproject";
  p.n_eq = 1;
  p.t_start = 0.0;
  p.t_end = 25.0;
  p.initial = {y0};
  p.exact = [C, y0](double t) { return Vec{y0 * (C * t + 1.0)}; };

  p.standard_form = [C](int q) {
    WeakForm wf;
    wf.n_eq = 1;
    wf.q = q;
    wf.name = "noproject/standard";
    wf.residual = [C](double t, const double* u, const double* ut, double* out) {
      out[0] = ut[0] / (u[0] - t * ut[0]) - C;
    };
    return wf;
  };
  p.invariant_form = [C](int q) {
    WeakForm wf;
    wf.n_eq = 1;
    wf.q = q;
    wf.name = "noproject/invariant";
    wf.residual = [C](double t, const double* u, const double* ut, double* out) {
      out[0] = (ut[0] - C * (u[0] - t * ut[0])) / u[0];
    };
    if (q >= 1) {
      // Invariantised test basis: the Lagrange formula over the node images
      // t_i + alpha u(t_i) with the frame value alpha = -t/u(t) taken at the
      // quadrature point.  At element endpoints these agree with the plain
      // Lagrange values.
      wf.test_weight = [](int k, double t, const double* u, const ElementContext& ctx) {
        const double alpha = -t / u[0];
        const std::size_t m = ctx.test_nodes.size();
        std::vector<double> img(m);
        for (std::size_t j = 0; j < m; ++j) {
          const double tj = ctx.test_nodes[j];
          img[j] = tj + alpha * ctx.value(0, tj);
        }
        const double ti = t + alpha * u[0];  // = 0 identically
        double w = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
          if (static_cast<int>(j) == k) continue;
          w *= (ti - img[j]) / (img[k] - img[j]);
        }
        return w;
      };
    }
    return wf;
  };

  p.action.r = 2;
  p.action.n_eq = 1;
  p.action.name = "nonprojectable(alpha,beta)";
  p.action.apply = [](const GroupElement& g, double t, const double* u, double* t_out,
                      double* u_out) {
    *t_out = t + g.params[0] * u[0];
    u_out[0] = std::exp(g.params[1]) * u[0];
  };
  p.action.apply_jet = [](const GroupElement& g, double t, const Vec& u, const Vec& ut) {
    const double al = g.params[0], be = g.params[1];
    JetImage z;
    z.t = t + al * u[0];
    z.dt_dt = 1.0 + al * ut[0];
    z.u = {std::exp(be) * u[0]};
    z.ut = {std::exp(be) * ut[0] / (1.0 + al * ut[0])};
    return z;
  };
  p.action.compose = [](const GroupElement& g1, const GroupElement& g2) {
    return GroupElement{{g1.params[0] + g2.params[0] * std::exp(g1.params[1]),
                         g1.params[1] + g2.params[1]}};
  };
  p.action.inverse = [](const GroupElement& g) {
    return GroupElement{{-g.params[0] * std::exp(-g.params[1]), -g.params[1]}};
  };
  p.action.admissible = [](const GroupElement&, double, const Vec&) { return true; };

  p.frame.frame = [](double t, const Vec& u, const Vec&) {
    return GroupElement{{-t / u[0], -std::log(std::abs(u[0]))}};
  };
  p.frame.admissible = [](double, const Vec& u, const Vec&) { return u[0] != 0.0; };
  p.cross_section = {{0, 0.0, false}, {1, 1.0, true}};

  p.admissible = [](double t, const Vec& u, const Vec& ut) {
    return std::abs(u[0]) > 1e-8 && std::abs(u[0] - t * ut[0]) > 1e-8;
  };
  p.sample_state = [](std::mt19937& rng, bool negate, double& t, Vec& u, Vec& ut) {
    t = uniform(rng, 0.5, 1.5);
    const double y = uniform(rng, 0.7, 1.5) * (negate ? -1.0 : 1.0);
    u = {y};
    ut = {uniform(rng, -0.3, 0.3)};
  };
  return p;
}

// ---------------------------------------------------------------------------
// Naive discretisation example: the inconsistent linearised rows
// {v_t - u, u_t - v} against the invariant rows derived from the SL(2)
// action on (t, u).

ProblemInstance naive_linearised() {
  ProblemInstance p;
  p.name = "naive";
  p.n_eq = 2;
  p.t_start = 0.0;
  p.t_end = 10.0;
  p.initial = {std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  p.exact = [](double t) {
    const double s = std::sqrt(t * t + 2.0 * t + 2.0);
    return Vec{s, (t + 1.0) / s};
  };

  p.standard_form = [](int q) {
    WeakForm wf;
    wf.n_eq = 2;
    wf.q = q;
    wf.name = "naive/naive";
    wf.residual = [](double, const double* u, const double* ut, double* out) {
      out[0] = ut[1] - u[0];
      out[1] = ut[0] - u[1];
    };
    return wf;
  };
  p.invariant_form = [](int q) {
    WeakForm wf;
    wf.n_eq = 2;
    wf.q = q;
    wf.name = "naive/invariant";
    wf.residual = [](double, const double* u, const double* ut, double* out) {
      out[0] = ut[1] * u[0] - 1.0 / (u[0] * u[0]) + u[1] * (u[1] - ut[0]);
      out[1] = (ut[0] - u[1]) / u[0];
    };
    return wf;
  };

  p.action.r = 4;
  p.action.n_eq = 2;
  p.action.name = "sl2-mobius-t";
  p.action.identity_params = {1.0, 0.0, 0.0, 1.0};
  p.action.apply = [](const GroupElement& g, double t, const double* u, double* t_out,
                      double* u_out) {
    const double al = g.params[0], be = g.params[1], ga = g.params[2], de = g.params[3];
    const double D = ga * t + de;
    *t_out = (al * t + be) / D;
    u_out[0] = u[0] / D;
    u_out[1] = D * u[1] - ga * u[0];
  };
  p.action.apply_jet = [](const GroupElement& g, double t, const Vec& u, const Vec& ut) {
    const double al = g.params[0], be = g.params[1], ga = g.params[2], de = g.params[3];
    const double D = ga * t + de;
    JetImage z;
    z.t = (al * t + be) / D;
    z.dt_dt = 1.0 / (D * D);
    z.u = {u[0] / D, D * u[1] - ga * u[0]};
    z.ut = {D * ut[0] - ga * u[0], (ga * u[1] + D * ut[1] - ga * ut[0]) * D * D};
    return z;
  };
  p.action.compose = [](const GroupElement& g1, const GroupElement& g2) {
    const double a1 = g1.params[0], b1 = g1.params[1], c1 = g1.params[2], d1 = g1.params[3];
    const double a2 = g2.params[0], b2 = g2.params[1], c2 = g2.params[2], d2 = g2.params[3];
    return GroupElement{{a2 * a1 + b2 * c1, a2 * b1 + b2 * d1, c2 * a1 + d2 * c1,
                         c2 * b1 + d2 * d1}};
  };
  p.action.inverse = [](const GroupElement& g) {
    return GroupElement{{g.params[3], -g.params[1], -g.params[2], g.params[0]}};
  };
  p.action.chart_constraint = [](const GroupElement& g) {
    return g.params[0] * g.params[3] - g.params[1] * g.params[2] - 1.0;
  };
  p.action.admissible = [](const GroupElement& g, double t, const Vec&) {
    return std::abs(g.params[2] * t + g.params[3]) > 1e-6;
  };

  p.frame.frame = [](double t, const Vec& u, const Vec&) {
    return GroupElement{{1.0 / u[0], -t / u[0], u[1], u[0] - t * u[1]}};
  };
  p.frame.admissible = [](double, const Vec& u, const Vec&) { return u[0] != 0.0; };
  p.frame.double_cover = true;
  p.cross_section = {{0, 0.0, false}, {1, 1.0, false}, {2, 0.0, false}};

  p.admissible = [](double, const Vec& u, const Vec&) { return std::abs(u[0]) > 1e-8; };
  p.sample_state = [](std::mt19937& rng, bool negate, double& t, Vec& u, Vec& ut) {
    t = uniform(rng, 0.0, 1.0);
    const double y = uniform(rng, 0.5, 1.5) * (negate ? -1.0 : 1.0);
    const double yt = uniform(rng, -0.5, 0.5);
    u = {y, yt};
    ut = {yt, uniform(rng, -0.5, 0.5)};
  };
  return p;
}

// ---------------------------------------------------------------------------
// Linear second-order problem: superposition symmetry u -> u + e1 a + e2 c
// with homogeneous solutions a, c.  No invariantisation is needed; the
// standard scheme already preserves the symmetry.

ProblemInstance linear_second_order(const LinearCoefficients& c, Vec initial, double t_start,
                                    double t_end, std::function<Vec(double)> exact) {
  ProblemInstance p;
  p.name = "linear2";
  p.n_eq = 2;
  p.t_start = t_start;
  p.t_end = t_end;
  p.initial = std::move(initial);
  p.exact = std::move(exact);

  auto form = [c](int q) {
    WeakForm wf;
    wf.n_eq = 2;
    wf.q = q;
    wf.name = "linear2/standard";
    wf.residual = [c](double t, const double* u, const double* ut, double* out) {
      out[0] = ut[1] + c.p(t) * u[1] + c.q(t) * u[0] - c.f(t);
      out[1] = ut[0] - u[1];
    };
    return wf;
  };
  p.standard_form = form;
  p.invariant_form = form;

  p.action.r = 2;
  p.action.n_eq = 2;
  p.action.name = "superposition(e1,e2)";
  p.action.apply = [c](const GroupElement& g, double t, const double* u, double* t_out,
                       double* u_out) {
    const double e1 = g.params[0], e2 = g.params[1];
    *t_out = t;
    u_out[0] = u[0] + e1 * c.alpha(t) + e2 * c.gamma(t);
    u_out[1] = u[1] + e1 * c.alpha_t(t) + e2 * c.gamma_t(t);
  };
  p.action.apply_jet = [c](const GroupElement& g, double t, const Vec& u, const Vec& ut) {
    const double e1 = g.params[0], e2 = g.params[1];
    JetImage z;
    z.t = t;
    z.dt_dt = 1.0;
    z.u = {u[0] + e1 * c.alpha(t) + e2 * c.gamma(t), u[1] + e1 * c.alpha_t(t) + e2 * c.gamma_t(t)};
    z.ut = {ut[0] + e1 * c.alpha_t(t) + e2 * c.gamma_t(t),
            ut[1] + e1 * c.alpha_tt(t) + e2 * c.gamma_tt(t)};
    return z;
  };
  p.action.compose = [](const GroupElement& g1, const GroupElement& g2) {
    return GroupElement{{g1.params[0] + g2.params[0], g1.params[1] + g2.params[1]}};
  };
  p.action.inverse = [](const GroupElement& g) {
    return GroupElement{{-g.params[0], -g.params[1]}};
  };
  p.action.admissible = [](const GroupElement&, double, const Vec&) { return true; };

  p.admissible = [](double, const Vec&, const Vec&) { return true; };
  p.sample_state = [](std::mt19937& rng, bool, double& t, Vec& u, Vec& ut) {
    t = uniform(rng, 0.0, 2.0);
    const double y = uniform(rng, -1.0, 1.0);
    const double yt = uniform(rng, -1.0, 1.0);
    u = {y, yt};
    ut = {yt, uniform(rng, -1.0, 1.0)};
  };
  return p;
}

// ---------------------------------------------------------------------------

const ProblemInstance& problem(const std::string& name) {
  static const std::map<std::string, ProblemInstance> registry = [] {
    std::map<std::string, ProblemInstance> m;
    m.emplace("working", working_example(false));
    m.emplace("working-growth", working_example(true));
    m.emplace("schwarzian", schwarzian());
    m.emplace("quasilinear", quasi_linear());
    m.emplace("noproject", non_projectable());
    m.emplace("naive", naive_linearised());
    LinearCoefficients lc;
    lc.p = lc.q = [](double) { return 0.0; };
    lc.f = [](double) { return 2.0; };
    lc.alpha = [](double) { return 1.0; };
    lc.alpha_t = lc.alpha_tt = lc.gamma_tt = [](double) { return 0.0; };
    lc.gamma = [](double t) { return t; };
    lc.gamma_t = [](double) { return 1.0; };
    m.emplace("linear2", linear_second_order(
                             lc, {0.0, 0.0}, 0.0, 10.0,
                             [](double t) { return Vec{t * t, 2.0 * t}; }));
    return m;
  }();
  auto it = registry.find(name);
  if (it == registry.end()) throw ParameterError("unknown problem: " + name);
  return it->second;
}

std::vector<std::string> problem_names() {
  return {"working", "working-growth", "schwarzian", "quasilinear", "noproject", "naive",
          "linear2"};
}

}  // namespace symcg

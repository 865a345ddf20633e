#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "symcg/group.hpp"
#include "symcg/invariance.hpp"
#include "symcg/problems.hpp"

using namespace symcg;

namespace {

// Near-identity draw in the chart of the action; SL(2) charts (4 stored
// parameters) are renormalised onto det = 1.
GroupElement random_element(std::mt19937& rng, const GroupAction& action, double radius) {
  std::uniform_real_distribution<double> d(-radius, radius);
  GroupElement g = action.identity();
  for (double& p : g.params) p += d(rng);
  if (g.params.size() == 4) g.params[3] = (1.0 + g.params[1] * g.params[2]) / g.params[0];
  return g;
}

double param_gap(const GroupElement& a, const GroupElement& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    m = std::max(m, std::abs(a.params[i] - b.params[i]));
  return m;
}

}  // namespace

TEST_CASE("act_point: working example") {
  const GroupAction& act = problem("working").action;
  double t_out = -1.0;
  Vec u_out(2);
  const Vec z = {1.0, 0.0};

  act.apply(act.identity(), 0.0, z.data(), &t_out, u_out.data());
  CHECK(t_out == 0.0);
  CHECK(u_out[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(u_out[1] == doctest::Approx(0.0).epsilon(1e-14));

  act.apply(GroupElement{{1.0, 0.0}}, 0.0, z.data(), &t_out, u_out.data());
  CHECK(t_out == 0.0);
  CHECK(u_out[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(u_out[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("act_point: non-projectable example moves time") {
  const GroupAction& act = problem("noproject").action;
  double t_out = 0.0;
  Vec u_out(1);
  const Vec z = {1.0};
  act.apply(GroupElement{{1.0, std::log(2.0)}}, 0.0, z.data(), &t_out, u_out.data());
  CHECK(t_out == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(u_out[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("compose: non-projectable law, first argument acts first") {
  const GroupAction& act = problem("noproject").action;
  const GroupElement c = act.compose(GroupElement{{1.0, 0.0}}, GroupElement{{1.0, std::log(2.0)}});
  CHECK(c.params[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(c.params[1] == doctest::Approx(std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("compose/inverse: group axioms on random draws for every action") {
  std::mt19937 rng(17);
  for (const char* name : {"working", "schwarzian", "quasilinear", "noproject", "naive"}) {
    const GroupAction& act = problem(name).action;
    for (int i = 0; i < 100; ++i) {
      const GroupElement g1 = random_element(rng, act, 0.5);
      const GroupElement g2 = random_element(rng, act, 0.5);
      const GroupElement g3 = random_element(rng, act, 0.5);
      CHECK(param_gap(act.compose(act.compose(g1, g2), g3), act.compose(g1, act.compose(g2, g3)))
            <= 1e-10);
      CHECK(param_gap(act.compose(g1, act.identity()), g1) <= 1e-12);
      CHECK(param_gap(act.compose(g1, act.inverse(g1)), act.identity()) <= 1e-10);
    }
  }
}

TEST_CASE("compose: SL(2) chart keeps the determinant at one") {
  std::mt19937 rng(23);
  const GroupAction& act = problem("schwarzian").action;
  for (int i = 0; i < 50; ++i) {
    const GroupElement c = act.compose(random_element(rng, act, 0.5), random_element(rng, act, 0.5));
    CHECK(std::abs(c.params[0] * c.params[3] - c.params[1] * c.params[2] - 1.0) <= 1e-12);
  }
}

TEST_CASE("action consistency: composite, sequential and inverse round trips") {
  std::mt19937 rng(29);
  for (const char* name : {"working", "schwarzian", "quasilinear", "noproject", "naive"}) {
    const ProblemInstance& p = problem(name);
    int done = 0;
    while (done < 25) {
      double t = 0.0;
      Vec u, ut;
      p.sample_state(rng, false, t, u, ut);
      const GroupElement g1 = random_element(rng, p.action, 0.3);
      const GroupElement g2 = random_element(rng, p.action, 0.3);
      if (p.action.admissible && !p.action.admissible(g1, t, u)) continue;
      double t1 = 0.0;
      Vec u1(u.size());
      p.action.apply(g1, t, u.data(), &t1, u1.data());
      if (p.action.admissible && !p.action.admissible(g2, t1, u1)) continue;
      const GroupElement c = p.action.compose(g1, g2);
      if (p.action.admissible && !p.action.admissible(c, t, u)) continue;

      double t2 = 0.0, tc = 0.0;
      Vec u2(u.size()), uc(u.size());
      p.action.apply(g2, t1, u1.data(), &t2, u2.data());
      p.action.apply(c, t, u.data(), &tc, uc.data());
      CHECK(std::abs(t2 - tc) <= 1e-10);
      for (std::size_t k = 0; k < u.size(); ++k) CHECK(std::abs(u2[k] - uc[k]) <= 1e-10);

      const GroupElement gi = p.action.inverse(g1);
      double tb = 0.0;
      Vec ub(u.size());
      p.action.apply(gi, t1, u1.data(), &tb, ub.data());
      CHECK(std::abs(tb - t) <= 1e-10);
      for (std::size_t k = 0; k < u.size(); ++k) CHECK(std::abs(ub[k] - u[k]) <= 1e-10);
      ++done;
    }
  }
}

TEST_CASE("frame: working example closed form") {
  const MovingFrame& mf = problem("working").frame;
  const GroupElement f0 = mf.frame(0.0, {1.0, 0.0}, {});
  CHECK(std::abs(f0.params[0]) <= 1e-14);
  CHECK(std::abs(f0.params[1]) <= 1e-14);
  const double e = std::exp(1.0);
  const GroupElement f1 = mf.frame(1.0, {e, e}, {});
  CHECK(f1.params[0] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(std::abs(f1.params[1]) <= 1e-13);
}

TEST_CASE("frame: Schwarzian identity on the cross-section") {
  const MovingFrame& mf = problem("schwarzian").frame;
  const GroupElement f = mf.frame(0.0, {0.0, 1.0, 0.0}, {});
  CHECK(f.params[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(f.params[1]) <= 1e-13);
  CHECK(std::abs(f.params[2]) <= 1e-13);
  CHECK(f.params[3] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("cross-section: working example lands on (sign(u), 0)") {
  const ProblemInstance& p = problem("working");
  const Vec u = {3.0, -1.0};
  CHECK(cross_section_defect(p.action, p.frame, p.cross_section, 2.0, u, Vec(2, 0.0)) <= 1e-12);
  const GroupElement f = p.frame.frame(2.0, u, {});
  double t_out = 0.0;
  Vec u_out(2);
  p.action.apply(f, 2.0, u.data(), &t_out, u_out.data());
  CHECK(u_out[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(u_out[1]) <= 1e-12);
}

TEST_CASE("cross-section: non-projectable frame sends (3,-2) to (0,-1)") {
  const ProblemInstance& p = problem("noproject");
  const Vec u = {-2.0};
  const GroupElement f = p.frame.frame(3.0, u, {});
  double t_out = 1.0;
  Vec u_out(1);
  p.action.apply(f, 3.0, u.data(), &t_out, u_out.data());
  CHECK(std::abs(t_out) <= 1e-13);
  CHECK(u_out[0] == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("cross-section: naive frame is the identity at (0,1,0)") {
  const ProblemInstance& p = problem("naive");
  const GroupElement f = p.frame.frame(0.0, {1.0, 0.0}, {});
  CHECK(param_gap(f, p.action.identity()) <= 1e-13);
  CHECK(cross_section_defect(p.action, p.frame, p.cross_section, 0.0, {1.0, 0.0}, Vec(2, 0.0)) <=
        1e-12);
}

TEST_CASE("equivariance: identity has zero defect; random draws stay below 1e-9") {
  std::mt19937 rng(31);
  for (const char* name : {"working", "schwarzian", "quasilinear", "noproject", "naive"}) {
    const ProblemInstance& p = problem(name);
    int done = 0;
    while (done < 100) {
      double t = 0.0;
      Vec u, ut;
      const bool negate = (name != std::string("schwarzian")) && (done % 2 == 1);
      p.sample_state(rng, negate, t, u, ut);
      if (!p.frame.admissible(t, u, ut)) continue;
      if (done == 0) CHECK(equivariance_defect(p.action, p.frame, p.action.identity(), t, u, ut)
                           <= 1e-12);
      const GroupElement g = random_element(rng, p.action, 0.4);
      if (p.action.admissible && !p.action.admissible(g, t, u)) continue;
      const JetImage z = p.action.apply_jet(g, t, u, ut);
      if (!p.frame.admissible(z.t, z.u, z.ut)) continue;
      CHECK(equivariance_defect(p.action, p.frame, g, t, u, ut) <= 1e-9);
      ++done;
    }
  }
}

TEST_CASE("prolong_curve: identity leaves a curve unchanged") {
  const ProblemInstance& p = problem("working");
  SmoothCurve curve;
  curve.t_lo = 0.0;
  curve.t_hi = 1.0;
  curve.value = [](double t) { return Vec{std::exp(-t), -std::exp(-t)}; };
  curve.derivative = [](double t) { return Vec{-std::exp(-t), std::exp(-t)}; };
  const auto mapped = prolong_curve(p.action, p.action.identity(), curve);
  const JetImage z = mapped(0.4);
  CHECK(z.t == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(z.u[0] == doctest::Approx(std::exp(-0.4)).epsilon(1e-13));
  CHECK(z.ut[0] == doctest::Approx(-std::exp(-0.4)).epsilon(1e-12));
  CHECK(z.dt_dt == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("prolong_curve: working decay curve under g=(1,0) becomes constant 1") {
  const ProblemInstance& p = problem("working");
  SmoothCurve curve;
  curve.t_lo = 0.0;
  curve.t_hi = 1.0;
  curve.value = [](double t) { return Vec{std::exp(-t), -std::exp(-t)}; };
  curve.derivative = [](double t) { return Vec{-std::exp(-t), std::exp(-t)}; };
  const auto mapped = prolong_curve(p.action, GroupElement{{1.0, 0.0}}, curve);
  for (double t : {0.1, 0.5, 0.9}) {
    const JetImage z = mapped(t);
    CHECK(z.u[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(z.u[1]) <= 1e-12);
  }
}

TEST_CASE("prolong_curve: non-projectable solution stays a solution under any g") {
  const ProblemInstance& p = problem("noproject");
  SmoothCurve curve;
  curve.t_lo = 0.0;
  curve.t_hi = 5.0;
  curve.value = [](double t) { return Vec{0.5 * (t + 1.0)}; };
  curve.derivative = [](double) { return Vec{0.5}; };
  std::mt19937 rng(37);
  const WeakForm wf = p.standard_form(0);
  for (int i = 0; i < 10; ++i) {
    const GroupElement g = random_element(rng, p.action, 0.5);
    const auto mapped = prolong_curve(p.action, g, curve);
    for (double t : {0.5, 2.0, 4.5}) {
      const JetImage z = mapped(t);
      double r = 1.0;
      wf.residual(z.t, z.u.data(), z.ut.data(), &r);
      CHECK(std::abs(r) <= 1e-10);
    }
  }
}

TEST_CASE("prolong_curve: derivative matches finite differences of the mapped curve") {
  std::mt19937 rng(41);
  for (const char* name : {"working", "quasilinear", "noproject"}) {
    const ProblemInstance& p = problem(name);
    const double lo = (name == std::string("quasilinear")) ? 1.0 : 0.1;
    const SmoothCurve curve = polynomial_jet_curve({1.2, 0.3, -0.1, 0.05}, p.n_eq, lo, lo + 0.8);
    for (int i = 0; i < 10; ++i) {
      const GroupElement g = random_element(rng, p.action, 0.3);
      const auto mapped = prolong_curve(p.action, g, curve);
      const double t = lo + 0.2 + 0.04 * i, h = 1e-6;
      const JetImage zm = mapped(t - h), z = mapped(t), zp = mapped(t + h);
      for (int c = 0; c < p.n_eq; ++c) {
        const double fd = (zp.u[c] - zm.u[c]) / (zp.t - zm.t);
        CHECK(std::abs(z.ut[c] - fd) <= 1e-5);
      }
    }
  }
}

TEST_CASE("symmetry: transformed exact solutions still solve the system") {
  std::mt19937 rng(43);
  for (const char* name : {"working", "schwarzian", "quasilinear", "noproject"}) {
    const ProblemInstance& p = problem(name);
    SmoothCurve curve;
    curve.t_lo = p.t_start;
    curve.t_hi = curve.t_lo + 1.0;
    curve.value = p.exact;
    if (name == std::string("working")) {
      curve.derivative = [](double t) { return Vec{-std::exp(-t), std::exp(-t)}; };
    } else if (name == std::string("schwarzian")) {
      curve.derivative = [](double t) {
        const double d = 2.0 + t;
        return Vec{-4.0 / (d * d), 8.0 / (d * d * d), -24.0 / (d * d * d * d)};
      };
    } else if (name == std::string("quasilinear")) {
      curve.derivative = [](double t) {
        const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
        return Vec{1.0 / 12.0 - 9.0 / (4.0 * t2) + 25.0 / (6.0 * t3),
                   9.0 / (2.0 * t3) - 25.0 / (2.0 * t4)};
      };
    } else {
      curve.derivative = [](double) { return Vec{0.5}; };
    }
    const WeakForm wf = p.standard_form(0);
    Vec r(p.n_eq);
    int done = 0;
    while (done < 20) {
      const GroupElement g = random_element(rng, p.action, 0.1);
      bool admissible = true;
      const auto mapped = prolong_curve(p.action, g, curve);
      for (double s : {0.2, 0.5, 0.8}) {
        const double t = curve.t_lo + s;
        if (p.action.admissible && !p.action.admissible(g, t, p.exact(t))) admissible = false;
      }
      if (!admissible) continue;
      for (double s : {0.2, 0.5, 0.8}) {
        const JetImage z = mapped(curve.t_lo + s);
        wf.residual(z.t, z.u.data(), z.ut.data(), r.data());
        for (double v : r) CHECK(std::abs(v) <= 1e-8);
      }
      ++done;
    }
  }
}

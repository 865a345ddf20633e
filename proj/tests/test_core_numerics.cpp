#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "symcg/errors.hpp"
#include "symcg/lagrange.hpp"
#include "symcg/linalg.hpp"
#include "symcg/quadrature.hpp"

using namespace symcg;

TEST_CASE("gauss_legendre: one-point rule is the midpoint rule") {
  const QuadratureRule r = gauss_legendre(1);
  REQUIRE(r.size() == 1);
  CHECK(r.nodes[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre: two-point rule closed form") {
  const QuadratureRule r = gauss_legendre(2);
  const double off = std::sqrt(3.0) / 6.0;
  REQUIRE(r.size() == 2);
  CHECK(r.nodes[0] == doctest::Approx(0.5 - off).epsilon(1e-14));
  CHECK(r.nodes[1] == doctest::Approx(0.5 + off).epsilon(1e-14));
  CHECK(r.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("gauss_legendre: two points integrate t^3 exactly") {
  const QuadratureRule r = gauss_legendre(2);
  double s = 0.0;
  for (int j = 0; j < r.size(); ++j) s += r.weights[j] * std::pow(r.nodes[j], 3);
  CHECK(s == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("gauss_legendre: n points integrate monomials up to degree 2n-1") {
  for (int n : {1, 2, 3, 5, 8, 16, 32}) {
    const QuadratureRule r = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int j = 0; j < r.size(); ++j) s += r.weights[j] * std::pow(r.nodes[j], k);
      CHECK(std::abs(s - 1.0 / (k + 1)) <= 1e-14);
    }
  }
}

TEST_CASE("gauss_legendre: point count out of range throws") {
  CHECK_THROWS_AS(gauss_legendre(0), ParameterError);
  CHECK_THROWS_AS(gauss_legendre(33), ParameterError);
  CHECK_THROWS_AS(gauss_legendre(-1), ParameterError);
}

TEST_CASE("LagrangeBasis: linear basis values on {0,1}") {
  const LagrangeBasis b({0.0, 1.0});
  CHECK(b.value(0, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(b.value(1, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("LagrangeBasis: degree zero is the constant 1") {
  const LagrangeBasis b({0.5});
  for (double x : {0.0, 0.3, 0.99}) CHECK(b.value(0, x) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("LagrangeBasis: partition of unity") {
  const LagrangeBasis b({0.0, 0.4, 0.7, 1.0});
  double s = 0.0;
  for (int i = 0; i <= b.degree(); ++i) s += b.value(i, 0.37);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("LagrangeBasis: cardinal property at nodes") {
  const LagrangeBasis b({0.0, 0.3, 1.0});
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      CHECK(b.value(i, b.nodes()[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
}

TEST_CASE("LagrangeBasis: duplicate nodes throw") {
  CHECK_THROWS_AS(LagrangeBasis({0.0, 0.5, 0.5}), ParameterError);
}

TEST_CASE("LagrangeBasis: reproduces polynomials of matching degree") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0), pt(0.0, 1.0);
  for (int deg : {1, 2, 3}) {
    Vec c(deg + 1);
    for (double& x : c) x = coef(rng);
    auto p = [&c](double x) {
      double v = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
      return v;
    };
    const LagrangeBasis b(equispaced_nodes(deg));
    for (int s = 0; s < 20; ++s) {
      const double x = pt(rng);
      double v = 0.0;
      for (int i = 0; i <= deg; ++i) v += p(b.nodes()[i]) * b.value(i, x);
      CHECK(std::abs(v - p(x)) <= 1e-12);
    }
  }
}

TEST_CASE("LagrangeBasis: derivative matches central differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pt(0.05, 0.95);
  const LagrangeBasis b({0.0, 0.35, 0.8, 1.0});
  const double h = 1e-6;
  for (int s = 0; s < 10; ++s) {
    const double x = pt(rng);
    for (int i = 0; i <= b.degree(); ++i) {
      const double fd = (b.value(i, x + h) - b.value(i, x - h)) / (2.0 * h);
      CHECK(std::abs(b.derivative(i, x) - fd) <= 1e-6);
    }
  }
}

TEST_CASE("lu_solve: identity") {
  Mat a(3, 3);
  for (int i = 0; i < 3; ++i) a(i, i) = 1.0;
  const Vec x = lu_solve(a, {1.0, 2.0, 3.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(x[2] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("lu_solve: diagonal") {
  Mat a(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 4.0;
  const Vec x = lu_solve(a, {2.0, 8.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("lu_solve: recovers a known solution of a random 6x6 system") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat a(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) a(i, j) = d(rng);
    a(i, i) += 4.0;  // diagonal dominance keeps the system well conditioned
  }
  Vec x(6);
  for (double& v : x) v = d(rng);
  Vec b(6, 0.0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) b[i] += a(i, j) * x[j];
  const Vec got = lu_solve(a, b);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(got[i] - x[i]) <= 1e-10);
}

TEST_CASE("lu_solve: singular matrix throws") {
  Mat a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_THROWS_AS(lu_solve(a, {1.0, 1.0}), SingularMatrixError);
}

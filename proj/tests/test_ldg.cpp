#include <cmath>
#include <numbers>
#include <random>

#include "compacton/error.hpp"
#include "compacton/ldg.hpp"
#include "doctest.h"

using namespace compacton;
using std::numbers::pi;

namespace {

GridFunction bump(const GridPtr& g) {
  return project(g, [](double x) { return std::abs(x) <= 5 * pi ? std::pow(std::cos(x / 10), 3) : 0.0; });
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
  return d;
}

// Round-off in the dispersive chain is amplified by the operator's spectral
// radius, about ((P+1)(P+2)/dx)^3 n max|u|^(n-1).
double roundoff_scale(const PeriodicGrid& g, const GridFunction& u, double n) {
  const int P = g.poly_order();
  const double r = (P + 1) * (P + 2) / g.dx();
  return 1e-15 * r * r * r * n * std::pow(u.max_abs(), n) + 1e-15 * u.max_abs();
}

double abs_integral(const GridFunction& u) {
  auto v = u;
  for (auto& x : v.values()) x = std::abs(x);
  return integrate(v);
}

// -(u^m)_x - (u^n)_xxx for u = 2 + cos x
double exact_rhs(double m, double n, double x) {
  const double u = 2 + std::cos(x), u1 = -std::sin(x), u2 = -std::cos(x), u3 = std::sin(x);
  return -m * std::pow(u, m - 1) * u1 -
         (n * (n - 1) * (n - 2) * std::pow(u, n - 3) * u1 * u1 * u1 +
          3 * n * (n - 1) * std::pow(u, n - 2) * u1 * u2 + n * std::pow(u, n - 1) * u3);
}

}  // namespace

TEST_CASE("flux_power keeps the sign for integer exponents") {
  CHECK(flux_power(-2.0, 2.0) == 4.0);
  CHECK(flux_power(-2.0, 3.0) == -8.0);
  CHECK(flux_power(-2.0, 1.5) == 0.0);
  CHECK(flux_power(4.0, 1.5) == doctest::Approx(8.0));
}

TEST_CASE("operator rejects a != 0") {
  CHECK_THROWS_AS(LdgOperator(EquationSpec(2, 1, 2), make_grid(0, 1, 4)), DomainError);
}

TEST_CASE("max wave speeds") {
  const auto g = make_grid(0.0, 1.0, 10);
  const LdgOperator op(make_kmn(2, 2), g);
  const auto s = op.max_wave_speeds(project(g, [](double) { return 1.0; }));
  CHECK(s.conv == doctest::Approx(2.0));
  CHECK(s.disp == doctest::Approx(2.0));
  const LdgOperator op32(make_kmn(3, 2), g);
  const auto s32 = op32.max_wave_speeds(project(g, [](double) { return -2.0; }));
  CHECK(s32.conv == doctest::Approx(12.0));
  CHECK(s32.disp == doctest::Approx(4.0));
}

TEST_CASE("rhs of zero and constant states vanish") {
  for (double m : {2.0, 3.0}) {
    const auto g = make_grid(-8 * pi, 8 * pi, 64);
    const LdgOperator op(make_kmn(m, 2), g);
    CHECK(op.rhs(GridFunction(g)).max_abs() == 0.0);
    const auto c = project(g, [](double) { return 0.7; });
    CHECK(op.rhs(c).max_abs() <= roundoff_scale(*g, c, 2));
    CHECK(op.rhs_reference(GridFunction(g)).max_abs() == 0.0);
  }
}

TEST_CASE("parallel kernel agrees with the serial reference") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-0.2, 1.0);
  for (int P : {1, 2, 3, 4}) {
    for (double m : {2.0, 3.0}) {
      const auto g = make_grid(-8 * pi, 8 * pi, 50, P, P + 2);
      for (auto mode : {FluxConstant::GlobalLaxFriedrichs, FluxConstant::LocalLaxFriedrichs}) {
        const LdgOperator op(make_kmn(m, 2), g, mode);
        GridFunction r(g);
        for (auto& v : r.values()) v = dist(rng);
        for (const auto& u : {bump(g), r}) {
          const auto a = op.rhs(u);
          const auto b = op.rhs_reference(u);
          CAPTURE(P);
          CHECK(max_abs_diff(a, b) <= roundoff_scale(*g, u, 2));
        }
      }
    }
  }
  // generic kernel path (no fixed-size specialization)
  const auto g = make_grid(0, 2 * pi, 20, 3, 7);
  const LdgOperator op(make_kmn(2, 2), g);
  const auto u = project(g, [](double x) { return 2 + std::cos(x); });
  CHECK(max_abs_diff(op.rhs(u), op.rhs_reference(u)) <= roundoff_scale(*g, u, 2));
}

TEST_CASE("rhs conserves mass") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (double m : {2.0, 3.0}) {
    const auto g = make_grid(-8 * pi, 8 * pi, 100);
    const LdgOperator op(make_kmn(m, 2), g);
    GridFunction r(g);
    for (auto& v : r.values()) v = dist(rng);
    for (const auto& u : {bump(g), r}) {
      const auto du = op.rhs(u);
      CHECK(std::abs(integrate(du)) <= 1e-12 * abs_integral(du));
    }
  }
}

TEST_CASE("rhs is translation equivariant by whole cells") {
  const auto g = make_grid(-8 * pi, 8 * pi, 80);
  const LdgOperator op(make_kmn(2, 2), g);
  const auto u = bump(g);
  const auto lhs = op.rhs(u.shifted(7));
  const auto rhs = op.rhs(u).shifted(7);
  CHECK(max_abs_diff(lhs, rhs) <= 1e-14 * rhs.max_abs());
}

TEST_CASE("reflection symmetry holds up to the one-sided flux error") {
  // For even data and even m, n the exact rhs is odd; the alternating fluxes
  // break the symmetry only at the discretization-error level.
  double prev = 0.0;
  for (int K : {16, 32, 64}) {
    const auto g = make_grid(-pi, pi, K);
    const LdgOperator op(make_kmn(2, 2), g);
    const auto u = project(g, [](double x) { return 2 + std::cos(x); });
    const auto r = op.rhs(u);
    double asym = 0.0;
    for (int j = 0; j < K; ++j) {
      for (int i = 0; i < 4; ++i) asym = std::max(asym, std::abs(r.at(j, i) + r.at(K - 1 - j, 3 - i)));
    }
    if (prev > 0.0) CHECK(std::log2(prev / asym) >= 0.9);
    prev = asym;
  }
}

TEST_CASE("sign-changing data: rhs commutes with u(x) -> -u(-x)") {
  // For even n the map sends solutions to solutions and swaps the upstream
  // side wherever u changes sign, so it holds exactly, not just to O(h).
  const int K = 32;
  const auto g = make_grid(-pi, pi, K);
  for (double m : {2.0, 4.0}) {
    const LdgOperator op(make_kmn(m, 2), g);
    const auto f = [](double x) { return std::sin(x) + 0.3 * std::cos(2 * x) + 0.1; };
    const auto u = project(g, f);
    const auto v = project(g, [&](double x) { return -f(-x); });
    const auto ru = op.rhs(u);
    const auto rv = op.rhs(v);
    double asym = 0.0;
    for (int j = 0; j < K; ++j) {
      for (int i = 0; i < 4; ++i) asym = std::max(asym, std::abs(rv.at(j, i) + ru.at(K - 1 - j, 3 - i)));
    }
    CHECK(asym <= roundoff_scale(*g, u, 2));
  }
}

TEST_CASE("rhs consistency on smooth positive data") {
  // Nodal values of a third-derivative DG operator applied to an O(h^(P+1))
  // representation converge like h^(P-2); cell averages (flux differences)
  // converge one order faster.
  for (int P : {2, 3, 4}) {
    std::vector<double> nodal, averages;
    for (int K : {32, 64, 128}) {
      const auto g = make_grid(0.0, 2 * pi, K, P, P + 2);
      const LdgOperator op(make_kmn(2, 2), g);
      const auto r = op.rhs(project(g, [](double x) { return 2 + std::cos(x); }));
      const auto exact = project(g, [](double x) { return exact_rhs(2, 2, x); });
      const auto& w = g->reference().node_weights();
      double e = 0.0, ea = 0.0;
      for (int j = 0; j < K; ++j) {
        double avg = 0.0;
        for (int i = 0; i <= P; ++i) {
          e = std::max(e, std::abs(r.at(j, i) - exact_rhs(2, 2, g->node_x(j, i))));
          avg += 0.5 * w[i] * (r.at(j, i) - exact.at(j, i));
        }
        ea = std::max(ea, std::abs(avg));
      }
      nodal.push_back(e);
      averages.push_back(ea);
    }
    CAPTURE(P);
    CHECK(std::log2(nodal[1] / nodal[2]) == doctest::Approx(P - 2).epsilon(0.1).scale(1.0));
    CHECK(std::log2(averages[1] / averages[2]) >= P - 1 - 0.05);
  }
}

TEST_CASE("rhs rejects non-finite input") {
  const auto g = make_grid(0.0, 1.0, 4);
  const LdgOperator op(make_kmn(2, 2), g);
  GridFunction u(g);
  u.at(1, 1) = std::nan("");
  CHECK_THROWS_AS(op.rhs(u), NonFiniteError);
}

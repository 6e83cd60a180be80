#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "compacton/bounds.hpp"
#include "compacton/error.hpp"
#include "compacton/quadrature.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace compacton;
using std::numbers::pi;

namespace {

// Nonnegative datum supported exactly on [x0, x0 + d]: a sum of sin^p humps.
struct RandomBump {
  double x0, d;
  std::vector<double> amp, power, freq;

  double operator()(double x) const {
    const double s = (x - x0) / d;
    if (s < 0 || s > 1) return 0.0;
    double v = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) v += amp[k] * std::pow(std::max(0.0, std::sin(pi * s)), power[k]) * (1.1 + std::cos(freq[k] * s));
    return v;
  }
  InitialCondition ic() const { return from_function(*this, x0, x0 + d); }
};

RandomBump random_bump(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  RandomBump b{-5.0 + 10.0 * U(rng), 0.5 + 10.0 * U(rng), {}, {}, {}};
  const int terms = 1 + static_cast<int>(3 * U(rng));
  for (int k = 0; k < terms; ++k) {
    b.amp.push_back(0.1 + 3.0 * U(rng));
    b.power.push_back(1.0 + 4.0 * U(rng));
    b.freq.push_back(20.0 * U(rng));
  }
  return b;
}

}  // namespace

TEST_CASE("bound values for the cos^3 bump") {
  const Domain dom{-8 * pi, 8 * pi};
  const auto k22 = compute_bounds(make_kmn(2, 2), cos_cubed_bump(), dom);
  CHECK(k22.T1 == doctest::Approx(oracle::kT1_K22).epsilon(5e-3));
  CHECK_FALSE(k22.T2.has_value());
  const auto k32 = compute_bounds(make_kmn(3, 2), cos_cubed_bump(), dom);
  CHECK(k32.T1 == doctest::Approx(oracle::kT1_K32).epsilon(5e-3));
  REQUIRE(k32.T2.has_value());
  CHECK(*k32.T2 == doctest::Approx(oracle::kT2_K32).epsilon(5e-3));
  CHECK(k32.T3 == doctest::Approx(oracle::kT3_K32).epsilon(5e-3));
  CHECK(k32.min_bound() == *k32.T2);
}

TEST_CASE("bound internals against the Wallis oracle") {
  const auto r = compute_bounds(make_kmn(3, 2), cos_cubed_bump());
  CHECK(r.I1 == doctest::Approx(oracle::kBumpMass).epsilon(1e-12));
  CHECK(r.I_omega * 3.0 == doctest::Approx(oracle::kBumpCube).epsilon(1e-12));
  CHECK(r.floor == doctest::Approx(oracle::holder_floor(3)).epsilon(1e-12));
  CHECK(r.d == doctest::Approx(oracle::kSupportWidth).epsilon(1e-15));
  CHECK(compute_bounds(make_kmn(2, 2), cos_cubed_bump()).floor == doctest::Approx(oracle::holder_floor(2)).epsilon(1e-12));
}

TEST_CASE("box datum: T1 = 1/2") {
  const auto r = compute_bounds(make_kmn(2, 2), box(0.0, 1.0));
  CHECK(r.I1 == doctest::Approx(1.0));
  CHECK(r.xmom == doctest::Approx(0.5));
  CHECK(r.floor == doctest::Approx(1.0));
  CHECK(r.T1 == doctest::Approx(0.5));
}

TEST_CASE("T2 <= T1 on random nonnegative bumps") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto b = random_bump(rng);
    for (double n : {2.0, 3.0}) {
      const auto r = compute_bounds(make_kmn(n + 1, n), b.ic());
      REQUIRE(r.T2.has_value());
      CAPTURE(i);
      CHECK(*r.T2 <= r.T1 * (1 + 1e-9));
      CHECK(r.T1 > 0);
      CHECK(std::isfinite(r.T3));
    }
  }
}

TEST_CASE("T1 scales like c^(1-m)") {
  for (double m : {2.0, 3.0, 4.5}) {
    const auto base = compute_bounds(make_kmn(m, 2), cos_cubed_bump());
    for (double c : {0.3, 2.0, 7.5}) {
      const auto scaled = compute_bounds(make_kmn(m, 2), cos_cubed_bump(c));
      CHECK(scaled.T1 == doctest::Approx(std::pow(c, 1 - m) * base.T1).epsilon(1e-12));
    }
  }
}

TEST_CASE("bounds are translation invariant") {
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    const auto b = random_bump(rng);
    auto moved = b;
    moved.x0 += 3.7 * (i - 4);
    const auto r0 = compute_bounds(make_kmn(3, 2), b.ic());
    const auto r1 = compute_bounds(make_kmn(3, 2), moved.ic());
    CHECK(r1.T1 == doctest::Approx(r0.T1).epsilon(1e-9));
    CHECK(*r1.T2 == doctest::Approx(*r0.T2).epsilon(1e-9));
    CHECK(r1.T3 == doctest::Approx(r0.T3).epsilon(1e-9));
  }
}

TEST_CASE("symmetric data: T1 = d^m / (2 I1^(m-1))") {
  for (double m : {2.0, 3.0}) {
    const auto r = compute_bounds(make_kmn(m, 2), cos_cubed_bump());
    CHECK(r.T1 == doctest::Approx(std::pow(r.d, m) / (2 * std::pow(r.I1, m - 1))).epsilon(1e-12));
  }
}

TEST_CASE("unshifted numerator equals the shifted first-moment integral") {
  std::mt19937 rng(9);
  for (int i = 0; i < 10; ++i) {
    const auto b = random_bump(rng);
    const auto r = compute_bounds(make_kmn(2, 2), b.ic());
    // d I1 - int_0^d s u0(s + x0) ds
    const double shifted = composite_gauss([&](double s) { return s * b(s + b.x0); }, 0.0, b.d, 4096);
    const double numerator = b.d * r.I1 - shifted;
    CHECK(r.T1 * r.floor == doctest::Approx(numerator).epsilon(1e-10));
  }
}

TEST_CASE("bounds from a DG field agree with the analytic datum") {
  const auto g = make_grid(-8 * pi, 8 * pi, 400);
  const auto u = project(g, [](double x) { return std::abs(x) <= 5 * pi ? std::pow(std::cos(x / 10), 3) : 0.0; });
  const auto r = compute_bounds(make_kmn(3, 2), u);
  CHECK(r.x0 == doctest::Approx(-5 * pi).epsilon(1e-12));
  CHECK(r.x1 == doctest::Approx(5 * pi).epsilon(1e-12));
  CHECK(r.T1 == doctest::Approx(oracle::kT1_K32).epsilon(5e-3));
  CHECK(*r.T2 == doctest::Approx(oracle::kT2_K32).epsilon(5e-3));
  CHECK(r.T3 == doctest::Approx(oracle::kT3_K32).epsilon(5e-3));
}

TEST_CASE("inadmissible data are rejected") {
  // sign violation names the most negative sample
  try {
    compute_bounds(make_kmn(2, 2), from_function([](double x) { return std::sin(x); }, 0.5, 6.0));
    FAIL("expected rejection");
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("nonnegative") != std::string::npos);
    CHECK(msg.find("u0(4.71") != std::string::npos);
  }
  CHECK_THROWS_AS(compute_bounds(make_kmn(2, 2), from_function([](double) { return 0.0; }, 0, 1)), DomainError);
  CHECK_THROWS_AS(compute_bounds(make_kmn(2, 2), cos_cubed_bump(), {-5 * pi, 8 * pi}), DomainError);
  CHECK_THROWS_AS(compute_bounds(EquationSpec(2, 1, 2), cos_cubed_bump()), DomainError);
  const auto g = make_grid(-1, 1, 10);
  CHECK_THROWS_AS(compute_bounds(make_kmn(2, 2), project(g, [](double) { return 1.0; })), DomainError);
  CHECK_THROWS_AS(compute_bounds(make_kmn(2, 2), GridFunction(g)), DomainError);
}

TEST_CASE("bound versus observed event") {
  BoundsReport r;
  r.T1 = 87.2;
  r.T2 = 25.77;
  r.T3 = 1522.0;
  CHECK(bound_vs_event(r, {{8.0, EventKind::SupportBreach, ""}}, 12.0) == Verdict::Ok);
  CHECK(bound_vs_event(r, {}, 3.0) == Verdict::Inconclusive);
  CHECK(bound_vs_event(r, {{30.0, EventKind::SupportBreach, ""}}, 40.0) == Verdict::Violation);
  CHECK(bound_vs_event(r, {{1.0, EventKind::Blowup, ""}}, 3.0) == Verdict::Inconclusive);
  CHECK(to_string(Verdict::Ok) == "OK");
}

#include <array>
#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"

#include "oracles/oracles.hpp"
#include "oracles/polylog_reference.hpp"
#include "qgeom/quadrature.hpp"

using namespace qgeom;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::array<double, 4> as_array(const MomentSet& m) { return {m.a, m.b, m.c, m.d}; }

}  // namespace

TEST_CASE("integrate_adaptive on elementary integrands", "[quadrature]") {
  auto f = [](double x) { return std::array<double, 2>{std::exp(-x), std::sqrt(x)}; };
  const auto r = integrate_adaptive<2>(f, {0.0, 1.0}, 1e-12, 1e-14, 200);
  REQUIRE(r.converged);
  CHECK_THAT(r.value[0], WithinRel(1.0 - std::exp(-1.0), 1e-13));
  CHECK_THAT(r.value[1], WithinRel(2.0 / 3.0, 1e-12));
  CHECK(r.subdivisions > 0);  // sqrt needs endpoint refinement

  const auto starved = integrate_adaptive<2>(f, {0.0, 1.0}, 1e-14, 1e-16, 2);
  CHECK_FALSE(starved.converged);
  CHECK(starved.subdivisions == 2);
}

TEST_CASE("frozen polylog references agree with direct summation", "[quadrature][oracle]") {
  for (const auto& ref : testing::kUndeformedReference) {
    if (ref.z >= 1.0) continue;  // series only converges inside the unit disc
    const double nu = ref.dimension == Dimension::D3 ? 0.5 : 0.0;
    const double sign = ref.statistics == Statistics::Boson ? 1.0 : -1.0;
    const double w = sign * ref.z;
    for (int k = 0; k < 4; ++k) {
      const long double li = testing::polylog(nu + 2.0 - k, w);
      const double v = sign * 2.0 * std::tgamma(nu + 1.0) * static_cast<double>(li);
      CHECK_THAT(v, WithinRel(ref.moments[k], 1e-14));
    }
  }
}

TEST_CASE("q = 1 moments match polylogarithms", "[quadrature][oracle]") {
  for (const auto& ref : testing::kUndeformedReference) {
    CAPTURE(to_string(ref.statistics), to_int(ref.dimension), ref.z);
    const auto m = moment_integrals({ref.statistics, 1.0, ref.dimension}, ref.z);
    const auto got = as_array(m);
    for (int k = 0; k < 4; ++k) CHECK_THAT(got[k], WithinRel(ref.moments[k], 1e-8));
  }
}

TEST_CASE("undeformed fermion gas is the doubled single-species result", "[quadrature]") {
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) sum += (k % 2 ? 1.0 : -1.0) * std::pow(0.5, k) / std::pow(k, 2.5);
  const double expected = 2.0 * (std::sqrt(std::numbers::pi) / 2.0) * sum;
  const auto m = moment_integrals({Statistics::Fermion, 1.0, Dimension::D3}, 0.5);
  CHECK_THAT(m.a, WithinRel(expected, 1e-9));
}

TEST_CASE("small-z moments match termwise exact integration", "[quadrature][oracle]") {
  const double z = 0.05;
  const GasSpec specs[] = {
      {Statistics::Boson, 0.5, Dimension::D2},
      {Statistics::Boson, 0.5, Dimension::D3},
      {Statistics::Boson, 1.3, Dimension::D2},
      {Statistics::Fermion, 10.0, Dimension::D3},
      {Statistics::Fermion, 0.5, Dimension::D2},
  };
  for (const auto& spec : specs) {
    CAPTURE(to_string(spec.statistics), spec.q, to_int(spec.dimension));
    const testing::SmallFugacitySeries series(spec, 9);
    const auto m = as_array(moment_integrals(spec, z));
    // Truncation error is O(z^10) times a modest coefficient.
    for (int k = 0; k < 4; ++k) CHECK_THAT(m[k], WithinRel(series.moment(k, z), 1e-9));
  }

  // Third-order hand expansion for bosons at nu = 0, as a check on the series
  // machinery itself.
  const double q = 0.5;
  const double b2 = 1.0 + q * q;
  const double b3 = 1.0 + q * q + q * q * q * q;
  const double hand = 2.0 * z + z * z * (3.0 / b2 - 1.0) +
                      z * z * z * (4.0 / b3 - 6.0 / (1.0 + b2) + 8.0 / 9.0);
  const testing::SmallFugacitySeries third({Statistics::Boson, q, Dimension::D2}, 3);
  CHECK_THAT(third.moment(0, z), WithinRel(hand, 1e-14));
}

TEST_CASE("boson moments are ordered c >= b >= a > 0 for q <= 1", "[quadrature][property]") {
  for (double q : {0.3, 0.7, 1.0}) {
    for (double z : {0.05, 0.3, 0.6, 0.9}) {
      for (Dimension d : {Dimension::D2, Dimension::D3}) {
        const auto m = moment_integrals({Statistics::Boson, q, d}, z);
        REQUIRE(m.a > 0.0);
        REQUIRE(m.b >= m.a);
        REQUIRE(m.c >= m.b);
      }
    }
  }
}

TEST_CASE("moments increase strictly with z", "[quadrature][property]") {
  // theta a = b, theta b = c, theta c = d. The third cumulant is positive
  // only for bosons with q <= 1; elsewhere d can fall with z (q = 2 bosons:
  // d(0.5) = 0.4053, d(0.7) = 0.3781 by direct summation).
  auto check = [](const GasSpec& spec, std::initializer_list<double> zs) {
    const int n = spec.statistics == Statistics::Boson && spec.q <= 1.0 ? 4 : 3;
    std::array<double, 4> prev{0, 0, 0, 0};
    for (double z : zs) {
      const auto m = as_array(moment_integrals(spec, z));
      CAPTURE(spec.q, z);
      for (int k = 0; k < n; ++k) REQUIRE(m[k] > prev[k]);
      prev = m;
    }
  };
  check({Statistics::Boson, 0.5, Dimension::D3}, {0.1, 0.3, 0.5, 0.7, 0.9});
  check({Statistics::Boson, 2.0, Dimension::D2}, {0.1, 0.3, 0.5, 0.7, 0.9});
  check({Statistics::Fermion, 1.0, Dimension::D3}, {0.1, 0.5, 1.0, 2.0});
}

TEST_CASE("refinement changes results by less than the error estimate", "[quadrature][property]") {
  const GasSpec specs[] = {
      {Statistics::Boson, 1.15, Dimension::D3},
      {Statistics::Fermion, 10.0, Dimension::D2},
  };
  for (const auto& spec : specs) {
    QuadratureConfig coarse;
    coarse.rel_tol = 1e-6;
    coarse.abs_tol = 1e-8;
    QuadratureConfig fine = coarse;
    fine.rel_tol *= 0.5;
    const auto a = moment_integrals(spec, 0.7, coarse);
    const auto b = moment_integrals(spec, 0.7, fine);
    const auto va = as_array(a);
    const auto vb = as_array(b);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(va[k] - vb[k]) <= a.est_error);
  }
}

TEST_CASE("moment_integrals error paths", "[quadrature]") {
  CHECK_THROWS_AS(moment_integrals({Statistics::Boson, 0.5, Dimension::D3}, 1.2), DomainError);
  QuadratureConfig starved;
  starved.rel_tol = 1e-14;
  starved.abs_tol = 1e-16;
  starved.max_subdivisions = 1;
  try {
    (void)moment_integrals({Statistics::Boson, 0.5, Dimension::D3}, 0.5, starved);
    FAIL("expected ToleranceError");
  } catch (const ToleranceError& e) {
    CHECK(e.achieved_error() > 0.0);
  }
}

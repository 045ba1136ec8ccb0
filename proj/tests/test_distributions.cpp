#include <cmath>

#include "catch_amalgamated.hpp"

#include "oracles/oracles.hpp"
#include "qgeom/distributions.hpp"

using namespace qgeom;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("boson theta sums: closed forms", "[distributions]") {
  // x = 0: sum (m+1) t^m = (1 - t)^{-2} regardless of q.
  for (double q : {0.5, 1.0, 2.0}) {
    const auto s = boson_theta_sums(0.0, 0.5, q);
    CHECK_THAT(s.F0, WithinRel(4.0, 1e-14));
  }
  // q = 1: derivative-geometric series in t = z e^{-x}.
  const auto s = boson_theta_sums(1.0, 0.5, 1.0);
  CHECK_THAT(s.F0, WithinRel(std::pow(1.0 - 0.5 * std::exp(-1.0), -2.0), 1e-14));
}

TEST_CASE("boson theta sums: q = 2 against long double brute force", "[distributions]") {
  const auto ref = testing::brute_boson_sums(1.0L, 0.5L, 2.0L, 200);
  const auto s = boson_theta_sums(1.0, 0.5, 2.0);
  CHECK_THAT(s.F0, WithinRel(static_cast<double>(ref[0]), 1e-14));
  CHECK_THAT(s.F1, WithinRel(static_cast<double>(ref[1]), 1e-14));
  CHECK_THAT(s.F2, WithinRel(static_cast<double>(ref[2]), 1e-14));
  CHECK_THAT(s.F3, WithinRel(static_cast<double>(ref[3]), 1e-14));
  // Levels grow like 4^m: only a handful of terms matter.
  CHECK(s.terms < 12);
}

TEST_CASE("boson theta sums: q = 1 closed form across x and z", "[distributions][property]") {
  for (double z : {0.1, 0.5, 0.9}) {
    for (double x = 0.0; x <= 50.0; x += 0.5) {
      const auto s = boson_theta_sums(x, z, 1.0);
      REQUIRE_THAT(s.F0, WithinAbs(std::pow(1.0 - z * std::exp(-x), -2.0), 1e-12));
    }
  }
}

TEST_CASE("boson theta sums: errors", "[distributions]") {
  CHECK_THROWS_AS(boson_theta_sums(1.0, 1.2, 0.8), DomainError);
  CHECK_THROWS_AS(boson_theta_sums(0.0, 1.2, 1.5), DomainError);
  CHECK_THROWS_AS(boson_theta_sums(-1.0, 0.5, 1.0), DomainError);
  // A tiny term budget cannot resolve z close to 1.
  CHECK_THROWS_AS(boson_theta_sums(0.0, 0.999, 0.5, 1e-15, 50), ConvergenceError);
  // q > 1 with x > 0 tolerates z >= 1.
  const auto s = boson_theta_sums(0.5, 3.0, 1.5);
  CHECK(std::isfinite(s.F3));
  const auto ref = testing::brute_boson_sums(0.5L, 3.0L, 1.5L, 60);
  CHECK_THAT(s.F0, WithinRel(static_cast<double>(ref[0]), 1e-13));
}

TEST_CASE("fermion h sums", "[distributions]") {
  for (double q : {0.5, 1.0, 10.0}) {
    const double z = 1.7;
    CHECK_THAT(fermion_h_sums(0.0, z, q).F0, WithinRel((1.0 + z) * (1.0 + z), 1e-15));
  }
  CHECK_THAT(fermion_h_sums(2.0, 0.5, 1.0).F0,
             WithinRel(std::pow(1.0 + 0.5 * std::exp(-2.0), 2.0), 1e-15));

  const auto s = fermion_h_sums(1.0, 2.0, 10.0);
  CHECK_THAT(s.F0, WithinRel(1.0 + 4.0 * std::exp(-1.0) + 4.0 * std::exp(-1.01), 1e-15));
  CHECK_THAT(s.F1, WithinRel(4.0 * std::exp(-1.0) + 8.0 * std::exp(-1.01), 1e-15));
  CHECK_THAT(s.F2, WithinRel(4.0 * std::exp(-1.0) + 16.0 * std::exp(-1.01), 1e-15));
  CHECK_THAT(s.F3, WithinRel(4.0 * std::exp(-1.0) + 32.0 * std::exp(-1.01), 1e-15));
}

TEST_CASE("q = 1 fermion factor is a perfect square", "[distributions][property]") {
  for (double z : {0.01, 0.5, 3.0, 40.0}) {
    for (double x = 0.0; x <= 30.0; x += 0.5) {
      const double ref = std::pow(1.0 + z * std::exp(-x), 2.0);
      REQUIRE(std::abs(fermion_h_sums(x, z, 1.0).F0 - ref) <= 1e-14 * ref);
    }
  }
}

TEST_CASE("log moments: closed forms", "[distributions]") {
  const GasSpec fermion{Statistics::Fermion, 3.0, Dimension::D3};
  for (double z : {0.2, 1.0, 7.0}) {
    const auto L = log_moments(fermion, 0.0, z);
    CHECK_THAT(L.L1, WithinRel(2.0 * z / (1.0 + z), 1e-14));
  }
  const GasSpec boson{Statistics::Boson, 1.0, Dimension::D2};
  for (double x : {0.0, 0.7, 5.0, 30.0}) {
    const auto L = log_moments(boson, x, 0.6);
    CHECK_THAT(L.L0, WithinRel(-2.0 * std::log1p(-0.6 * std::exp(-x)), 1e-13));
  }
}

TEST_CASE("log moments: deformed boson against brute force", "[distributions]") {
  const auto F = testing::brute_boson_sums(1.0L, 0.5L, 0.5L, 2000);
  const auto ref = testing::brute_cumulants(F);
  const auto L = log_moments({Statistics::Boson, 0.5, Dimension::D3}, 1.0, 0.5, 1e-16);
  CHECK_THAT(L.L0, WithinRel(static_cast<double>(ref[0]), 1e-13));
  CHECK_THAT(L.L1, WithinRel(static_cast<double>(ref[1]), 1e-13));
  CHECK_THAT(L.L2, WithinRel(static_cast<double>(ref[2]), 1e-13));
  CHECK_THAT(L.L3, WithinRel(static_cast<double>(ref[3]), 1e-12));
}

TEST_CASE("fermion central-moment route equals the raw-sum formula", "[distributions]") {
  for (double q : {0.5, 1.0, 10.0}) {
    for (double z : {0.1, 1.0, 10.0}) {
      for (double x : {0.0, 0.3, 2.0, 9.0}) {
        const auto direct = log_moments({Statistics::Fermion, q, Dimension::D2}, x, z);
        const auto raw = cumulants_from_sums(fermion_h_sums(x, z, q));
        CHECK_THAT(direct.L0, WithinRel(raw.L0, 1e-13));
        CHECK_THAT(direct.L1, WithinRel(raw.L1, 1e-13));
        CHECK_THAT(direct.L2, WithinRel(raw.L2, 1e-10));
        CHECK_THAT(direct.L3, WithinAbs(raw.L3, 1e-10 * (std::abs(raw.L3) + raw.L2)));
      }
    }
  }
}

TEST_CASE("theta derivatives are consistent with finite differences", "[distributions][property]") {
  // theta f(z) ~ z (f(z(1+h)) - f(z(1-h))) / (2 z h)
  auto check = [](const GasSpec& spec, double x, double z) {
    const double h = 1e-5;
    const auto up = log_moments(spec, x, z * (1.0 + h), 1e-17);
    const auto dn = log_moments(spec, x, z * (1.0 - h), 1e-17);
    const auto at = log_moments(spec, x, z, 1e-17);
    const auto fd = [&](double u, double d) { return (u - d) / (2.0 * h); };
    CHECK_THAT(fd(up.L0, dn.L0), WithinRel(at.L1, 1e-6));
    CHECK_THAT(fd(up.L1, dn.L1), WithinRel(at.L2, 1e-6));
    CHECK_THAT(fd(up.L2, dn.L2), WithinAbs(at.L3, 1e-6 * (std::abs(at.L3) + at.L2)));
  };
  for (double q : {0.5, 1.0, 1.15, 2.0})
    for (double z : {0.1, 0.5, 0.9})
      for (double x : {0.0, 0.4, 3.0}) check({Statistics::Boson, q, Dimension::D3}, x, z);
  for (double q : {0.5, 1.0, 10.0})
    for (double z : {0.1, 1.0, 10.0})
      for (double x : {0.0, 0.4, 3.0}) check({Statistics::Fermion, q, Dimension::D3}, x, z);
}

TEST_CASE("log moments are positive where required", "[distributions][property]") {
  auto rng = Catch::Generators::random(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double x = 20.0 * rng.get();
    rng.next();
    const double zb = 0.98 * rng.get() + 0.001;
    rng.next();
    const double q = 0.1 + 3.0 * rng.get();
    rng.next();
    const auto sb = boson_theta_sums(x, zb, q);
    REQUIRE(sb.F0 >= 1.0);
    REQUIRE(sb.F1 >= 0.0);
    const auto Lb = log_moments({Statistics::Boson, q, Dimension::D3}, x, zb);
    REQUIRE(Lb.L0 >= 0.0);
    REQUIRE(Lb.L2 >= 0.0);

    const double zf = 50.0 * zb;
    const auto Lf = log_moments({Statistics::Fermion, q, Dimension::D3}, x, zf);
    REQUIRE(Lf.L0 >= 0.0);
    REQUIRE(Lf.L1 > 0.0);
    REQUIRE(Lf.L2 >= 0.0);
  }
}

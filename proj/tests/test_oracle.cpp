#include <doctest.h>

#include <cmath>

#include "sigstab/charpoly.hpp"
#include "sigstab/oracle.hpp"
#include "sigstab/stability.hpp"

using namespace sigstab;
using oracle::Rational;

TEST_CASE("leibniz_charpoly_sigma examples") {
  auto bp = oracle::leibniz_charpoly_sigma(Matrix::from_rows({{-1, 2}, {2, -1}}));
  CHECK(bp.coefficient(2, 0) == 1);
  CHECK(bp.coefficient(1, 1) == 2);
  CHECK(bp.coefficient(0, 2) == 1);
  CHECK(bp.coefficient(0, 0) == -4);
  CHECK(bp.terms.size() == 4);

  bp = oracle::leibniz_charpoly_sigma(Matrix::from_rows({{-3}}));
  CHECK(bp.coefficient(1, 0) == 1);
  CHECK(bp.coefficient(0, 1) == 3);
  CHECK(bp.terms.size() == 2);

  const double d[] = {-1, -2, -3};
  bp = oracle::leibniz_charpoly_sigma(Matrix::diagonal(d));
  CHECK(bp.coefficient(3, 0) == 1);
  CHECK(bp.coefficient(2, 1) == 6);
  CHECK(bp.coefficient(1, 2) == 11);
  CHECK(bp.coefficient(0, 3) == 6);
  CHECK(bp.terms.size() == 4);
  CHECK(bp.x_coefficient(1) == RealPoly({0, 0, 11}));

  CHECK_THROWS_AS(oracle::leibniz_charpoly_sigma(Matrix(7)), oracle::DimensionTooLarge);
}

TEST_CASE("leibniz expansion is exact for fractional entries") {
  const auto bp = oracle::leibniz_charpoly_sigma(Matrix::from_rows({{-0.5, 0.25}, {0.125, -1}}));
  CHECK(bp.coefficient(0, 2) == Rational(1, 2));
  CHECK(bp.coefficient(0, 0) == Rational(-1, 32));
  CHECK(bp.coefficient(1, 1) == Rational(3, 2));
}

TEST_CASE("grid_scan_crossing examples") {
  auto g = oracle::grid_scan_crossing(Matrix::from_rows({{-1, 2}, {2, -1}}), 0.0, 4.0, 400);
  CHECK(std::abs(g.sigma_estimate - 2.0) <= 0.02);
  CHECK(g.profile.size() == 400);

  g = oracle::grid_scan_crossing(Matrix::from_rows({{-1, -2}, {2, -1}}), -1.0, 1.0, 200);
  CHECK(std::abs(g.sigma_estimate) <= 2.0 * g.spacing);

  const double d[] = {-1, -2, -3};
  CHECK_THROWS_AS(oracle::grid_scan_crossing(Matrix::diagonal(d), 1.0, 2.0, 50), oracle::NoCrossingInRange);
  CHECK_THROWS_AS(oracle::grid_scan_crossing(Matrix::diagonal(d), 1.0, 2.0, 2), oracle::NoCrossingInRange);
  CHECK_THROWS(oracle::grid_scan_crossing(Matrix::diagonal(d), 1.0, 2.0, 1));
}

TEST_CASE("random_matrix examples") {
  Matrix m = oracle::random_matrix(3, 1, {-5.0, -0.1}, {-5.0, 5.0}, 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) CHECK(m(i, j) == 0.0);
      else CHECK(m(i, i) < 0.0);
    }

  m = oracle::random_matrix(1, 12345, {-5.0, -0.1}, {-5.0, 5.0}, 0.0);
  CHECK(m(0, 0) < 0.0);

  CHECK(oracle::random_matrix(4, 42, {-5.0, -0.1}, {-5.0, 5.0}, 0.3) ==
        oracle::random_matrix(4, 42, {-5.0, -0.1}, {-5.0, 5.0}, 0.3));
  CHECK_FALSE(oracle::random_matrix(4, 42, {-5.0, -0.1}, {-5.0, 5.0}, 0.3) ==
              oracle::random_matrix(4, 43, {-5.0, -0.1}, {-5.0, 5.0}, 0.3));

  CHECK_THROWS(oracle::random_matrix(2, 0, {-1.0, 1.0}, {-1.0, 1.0}, 0.0));
  CHECK_THROWS(oracle::random_matrix(2, 0, {-1.0, -2.0}, {-1.0, 1.0}, 0.0));
  CHECK_THROWS(oracle::random_matrix(2, 0, {-2.0, -1.0}, {-1.0, 1.0}, 1.5));
  CHECK_THROWS(oracle::random_matrix(0, 0, {-2.0, -1.0}, {-1.0, 1.0}, 0.0));
}

TEST_CASE("generator stream is frozen") {
  // Seed 0 reproduces the reference SplitMix64 output sequence.
  const oracle::CounterRng rng(0);
  CHECK(rng.word(0) == 0xE220A8397B1DCDAFULL);
  CHECK(rng.word(1) == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.word(2) == 0x06C45D188009454FULL);
  CHECK(rng.unit(0) == static_cast<double>(0xE220A8397B1DCDAFULL >> 11) * 0x1.0p-53);

  const oracle::CounterRng child = rng.split(7);
  CHECK(child.word(0) == rng.split(7).word(0));
  CHECK(child.word(0) != rng.split(8).word(0));

  oracle::CounterRng seq(99);
  CHECK(seq.next_uniform(0.0, 1.0) == oracle::CounterRng(99).unit(0));
  CHECK(seq.next_uniform(0.0, 1.0) == oracle::CounterRng(99).unit(1));

  for (std::uint64_t k = 0; k < 1000; ++k) {
    const long v = rng.integer(k, -4, 4);
    CHECK(v >= -4);
    CHECK(v <= 4);
  }
}

TEST_CASE("property: interpolation matches the exact expansion") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const Matrix m = oracle::random_integer_matrix(n, seed, -4, -1, -4, 4);
    const auto bp = oracle::leibniz_charpoly_sigma(m);
    const auto scp = coefficient_polynomials(m);
    INFO("seed ", seed);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        const double exact = bp.coefficient_as_double(static_cast<int>(i), static_cast<int>(j));
        CHECK(scp.p[i][j] == exact);
      }
  }
}

TEST_CASE("property: grid scan agrees with bisection") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const Matrix m = oracle::random_matrix(n, 31337 + seed, {-5.0, -0.1}, {-5.0, 5.0}, 0.3);
    const auto crit = critical_sigma(m);
    const auto scan = oracle::grid_scan_crossing(m, 0.0, gershgorin_sigma(m) + 1.0, 1001);
    INFO("seed ", seed);
    CHECK(std::abs(scan.sigma_estimate - crit.sigma_star) <= 2.0 * scan.spacing);
  }
}

TEST_CASE("strict slack search") {
  const auto f = oracle::find_strict_slack_fixture(3, 1, 50, 1e-3);
  REQUIRE(f);
  CHECK(f->seed == 2);
  CHECK(f->slack > 1e-3);
  CHECK(f->slack == f->sigma_star - f->max_omega);
}

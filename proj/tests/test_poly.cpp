#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sigstab/oracle.hpp"
#include "sigstab/poly.hpp"

using namespace sigstab;

namespace {

RealPoly random_poly(std::uint64_t seed, double lo, double hi) {
  const oracle::CounterRng rng(seed);
  const auto deg = static_cast<std::size_t>(rng.integer(0, 1, 8));
  std::vector<double> c(deg + 1);
  for (std::size_t k = 0; k <= deg; ++k) c[k] = rng.uniform(k + 1, lo, hi);
  return RealPoly(c);
}

// Roots in [-5, 5] separated by at least 0.1.
std::vector<double> planted_roots(std::uint64_t seed) {
  const oracle::CounterRng rng(seed);
  const auto count = static_cast<std::size_t>(rng.integer(0, 1, 7));
  std::vector<double> roots;
  for (std::uint64_t k = 1; roots.size() < count && k < 1000; ++k) {
    const double r = rng.uniform(k, -5.0, 5.0);
    if (std::all_of(roots.begin(), roots.end(), [&](double s) { return std::abs(s - r) >= 0.1; }))
      roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

TEST_CASE("canonical form") {
  CHECK(RealPoly({1, 2, 0, 0}).coeffs() == std::vector<double>{1, 2});
  CHECK(RealPoly({0, 0}).is_zero());
  CHECK(RealPoly().coeffs() == std::vector<double>{0});
  CHECK(RealPoly::with_noise_floor({1, 1e-15, 1e-20}).coeffs() == std::vector<double>{1});
  CHECK_THROWS(RealPoly({1, std::numeric_limits<double>::infinity()}));
}

TEST_CASE("eval") {
  CHECK(RealPoly({-4, 0, 1}).eval(2) == 0.0);
  CHECK(RealPoly({0}).eval(17) == 0.0);
  CHECK(RealPoly({6, 11, 6, 1}).eval(-1) == 0.0);
  CHECK(RealPoly({1, 1}).eval(3) == 4.0);
}

TEST_CASE("arithmetic and division") {
  const RealPoly a{-1, 0, 1};
  const RealPoly b{1, 1};
  CHECK(a * b == RealPoly({-1, -1, 1, 1}));
  CHECK(a + b == RealPoly({0, 1, 1}));
  CHECK(a - a == RealPoly());
  const auto [q, r] = divmod(a, b);
  CHECK(q == RealPoly({-1, 1}));
  CHECK(r.is_zero());
  CHECK_THROWS_AS(divmod(a, RealPoly()), ZeroPolynomial);
  CHECK(RealPoly({-6, 11, -6, 1}).derivative() == RealPoly({11, -12, 3}));
}

TEST_CASE("gcd finds the repeated factor") {
  const double r1[] = {1, 1, 2};
  const RealPoly p = RealPoly::from_roots(r1);
  const RealPoly g = gcd(p, p.derivative());
  REQUIRE(g.degree() == 1);
  CHECK(-g[0] / g[1] == doctest::Approx(1.0));
}

TEST_CASE("descartes_sign_changes") {
  CHECK(descartes_sign_changes(RealPoly({6, 11, 6, 1})) == 0);
  CHECK(descartes_sign_changes(RealPoly({-4, 0, 1})) == 1);
  CHECK(descartes_sign_changes(RealPoly({1, -3, 1})) == 2);
  CHECK_THROWS_AS(descartes_sign_changes(RealPoly()), ZeroPolynomial);
}

TEST_CASE("cauchy bound and sturm count") {
  CHECK(cauchy_bound(RealPoly({-6, 11, -6, 1})) == 12.0);
  CHECK(sturm_count(RealPoly({-6, 11, -6, 1}), 0, 10) == 3);
  CHECK(sturm_count(RealPoly({-6, 11, -6, 1}), 1.5, 2.5) == 1);
  CHECK(sturm_count(RealPoly({4, 0, 1}), -10, 10) == 0);
  CHECK(sturm_count(RealPoly({1, -2, 1}), -10, 10) == 1);
}

TEST_CASE("real_roots examples") {
  auto rl = real_roots(RealPoly({-4, 0, 1}), 1e-10);
  REQUIRE(rl.size() == 2);
  CHECK(rl.roots[0].value == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(rl.roots[1].value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rl.roots[0].multiplicity == 1);
  CHECK(rl.roots[1].multiplicity == 1);

  CHECK(real_roots(RealPoly({4, 0, 1}), 1e-10).empty());

  rl = real_roots(RealPoly({-6, 11, -6, 1}), 1e-10);
  REQUIRE(rl.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(rl.roots[k].value - (k + 1)) <= 1e-10);

  CHECK_THROWS_AS(real_roots(RealPoly(), 1e-10), ZeroPolynomial);
  CHECK_THROWS_AS(real_roots(RealPoly({-4, 0, 1}), RootOptions{1e-14, 3}), NoConvergence);
}

TEST_CASE("real_roots multiplicities and zero roots") {
  const double r1[] = {-1, 2, 2, 2};
  auto rl = real_roots(RealPoly::from_roots(r1));
  REQUIRE(rl.size() == 2);
  CHECK(rl.roots[0].multiplicity == 1);
  CHECK(rl.roots[1].multiplicity == 3);
  CHECK(rl.roots[1].value == doctest::Approx(2.0).epsilon(1e-4));

  rl = real_roots(RealPoly({0, 0, 0, 6}));
  REQUIRE(rl.size() == 1);
  CHECK(rl.roots[0].value == 0.0);
  CHECK(rl.roots[0].multiplicity == 3);

  rl = real_roots(RealPoly({0, 2}));
  REQUIRE(rl.size() == 1);
  CHECK(rl.roots[0].value == 0.0);

  CHECK(real_roots(RealPoly::constant(3)).empty());
}

TEST_CASE("property: sturm count matches the returned roots") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const RealPoly p = random_poly(seed, -10.0, 10.0);
    const RootList rl = real_roots(p);
    const double b = cauchy_bound(p);
    const oracle::CounterRng rng(seed);
    double a1 = rng.uniform(100, -b, b);
    double b1 = rng.uniform(101, -b, b);
    if (a1 > b1) std::swap(a1, b1);
    INFO("seed ", seed);
    CHECK(static_cast<std::size_t>(sturm_count(p, -b, b)) == rl.size());
    // Skip subintervals whose endpoints fall inside a root's tolerance window.
    const bool near = std::any_of(rl.roots.begin(), rl.roots.end(), [&](const Root& r) {
      return std::abs(r.value - a1) < 1e-8 || std::abs(r.value - b1) < 1e-8;
    });
    if (!near) CHECK(static_cast<std::size_t>(sturm_count(p, a1, b1)) == rl.count_in(a1, b1));
  }
}

TEST_CASE("property: scaled residual bound") {
  // The bound tol * max(1, max|c|) is below double rounding of p(r) when a
  // root is large relative to the leading coefficient. It is asserted on
  // corpora with moderate root magnitude, and everywhere else against the
  // rounding floor of Horner's scheme.
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const RealPoly p = random_poly(seed, -10.0, 10.0);
    const double scale = std::max(1.0, p.max_abs());
    for (const Root& r : real_roots(p).roots) {
      INFO("seed ", seed, " root ", r.value);
      const double floor = 4.0 * (p.degree() + 1) * eps * p.eval_scale(r.value) +
                           4.0 * eps * std::abs(r.value) * std::abs(p.derivative().eval(r.value));
      CHECK(std::abs(p.eval(r.value)) <= std::max(kDefaultRootTol * scale, floor));
      if (std::abs(r.value) <= 2.0) CHECK(std::abs(p.eval(r.value)) <= kDefaultRootTol * scale);
    }
  }
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto roots = planted_roots(seed);
    const RealPoly p = oracle::planted_root_poly(roots, 1.0);
    const double scale = std::max(1.0, p.max_abs());
    for (const Root& r : real_roots(p).roots) CHECK(std::abs(p.eval(r.value)) <= kDefaultRootTol * scale);
  }
}

TEST_CASE("property: planted roots are recovered") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto roots = planted_roots(seed);
    const double lead = oracle::CounterRng(seed).uniform(999, 0.5, 3.0) * (seed % 2 ? -1 : 1);
    const RealPoly p = oracle::planted_root_poly(roots, lead);
    const RootList rl = real_roots(p);
    INFO("seed ", seed);
    REQUIRE(rl.size() == roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
      CHECK(std::abs(rl.roots[k].value - roots[k]) <= 1e-8);
      CHECK(rl.roots[k].multiplicity == 1);
    }

    int positive = 0;
    for (const Root& r : rl.roots) positive += r.value > 0.0 ? r.multiplicity : 0;
    const int v = descartes_sign_changes(p);
    CHECK(v >= positive);
    CHECK((v - positive) % 2 == 0);
  }
}

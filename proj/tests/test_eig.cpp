#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <ranges>

#include "sigstab/charpoly.hpp"
#include "sigstab/eig.hpp"
#include "sigstab/oracle.hpp"

using namespace sigstab;
using cplx = std::complex<double>;

TEST_CASE("eigenvalues examples") {
  auto s = eigenvalues(Matrix::from_rows({{0, 2}, {2, 0}}));
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues[0].real() == doctest::Approx(2.0));
  CHECK(s.eigenvalues[1].real() == doctest::Approx(-2.0));
  CHECK(s.abscissa == doctest::Approx(2.0));
  CHECK(s.real_crossing);
  CHECK_FALSE(s.complex_crossing);

  s = eigenvalues(Matrix::from_rows({{-1, -2}, {2, -1}}));
  CHECK(s.eigenvalues[0].real() == doctest::Approx(-1.0));
  CHECK(s.eigenvalues[0].imag() == doctest::Approx(2.0));
  CHECK(s.eigenvalues[1].imag() == doctest::Approx(-2.0));
  CHECK(s.abscissa == doctest::Approx(-1.0));
  CHECK_FALSE(s.real_crossing);
  CHECK(s.complex_crossing);
  CHECK(s.leading.size() == 2);

  s = eigenvalues(Matrix::identity(3));
  for (const cplx& z : s.eigenvalues) CHECK(z == cplx(1.0, 0.0));
  CHECK(s.abscissa == 1.0);
  CHECK(s.leading.size() == 3);

  s = eigenvalues(Matrix(4));
  CHECK(s.abscissa == 0.0);
}

TEST_CASE("spectral_abscissa examples") {
  const Matrix a = Matrix::from_rows({{-1, 2}, {2, -1}});
  CHECK(std::abs(spectral_abscissa(a, 2.0)) <= 1e-12);
  CHECK(spectral_abscissa(a, 3.0) == doctest::Approx(-1.0));
}

TEST_CASE("polynomial_roots") {
  auto r = polynomial_roots({4, 0, 1});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - cplx(0, 2)) <= 1e-12);
  CHECK(std::abs(r[1] - cplx(0, -2)) <= 1e-12);
  r = polynomial_roots({-6, 11, -6, 1});
  REQUIRE(r.size() == 3);
  CHECK(r[0].real() == doctest::Approx(3.0));
  CHECK(r[2].real() == doctest::Approx(1.0));
  CHECK(polynomial_roots({5}).empty());
}

TEST_CASE("property: trace, determinant and conjugate symmetry") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const std::size_t n = 1 + seed % 20;
    const oracle::CounterRng rng(seed);
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(i * n + j, -1.0, 1.0);
    const Spectrum s = eigenvalues(a);
    INFO("seed ", seed, " n ", n);
    REQUIRE(s.eigenvalues.size() == n);

    cplx sum = 0.0;
    cplx prod = 1.0;
    double max_re = -INFINITY;
    for (const cplx& z : s.eigenvalues) {
      sum += z;
      prod *= z;
      max_re = std::max(max_re, z.real());
    }
    CHECK(std::abs(sum.real() - a.trace()) <= 1e-8 * std::max(1.0, std::abs(a.trace())));
    CHECK(std::abs(sum.imag()) <= 1e-8);
    const double det = determinant(a);
    CHECK(std::abs(prod.real() - det) <= 1e-6 * std::abs(det));
    CHECK(s.abscissa == max_re);

    for (const cplx& z : s.eigenvalues) {
      const double gap = std::ranges::min(s.eigenvalues | std::views::transform([&](const cplx& w) {
                                            return std::abs(w - std::conj(z));
                                          }));
      CHECK(gap <= 1e-9);
    }
  }
}

TEST_CASE("property: eigenvalues are roots of the characteristic polynomial") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 1 + seed % 10;
    const Matrix m = oracle::random_matrix(n, seed, {-5.0, -0.1}, {-5.0, 5.0}, 0.3);
    const double sigma = oracle::CounterRng(seed).uniform(500, 0.0, 3.0);
    const auto c = charpoly_at(m, sigma);
    const Spectrum s = eigenvalues(build_sigma_matrix(m, sigma));
    double scale = 0.0;
    for (const cplx& z : s.eigenvalues) {
      double z_scale = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) z_scale += std::abs(c[k]) * std::pow(std::abs(z), double(k));
      scale = std::max(scale, z_scale);
    }
    for (const cplx& z : s.eigenvalues) {
      cplx v = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
      CHECK(std::abs(v) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("property: abscissa at sigma = 0 is nonnegative") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 1 + seed % 12;
    const Matrix m = oracle::random_matrix(n, 9000 + seed, {-5.0, -0.1}, {-5.0, 5.0}, 0.3);
    CHECK(spectral_abscissa(m, 0.0) >= -1e-9);
  }
}

TEST_CASE("triangular input yields its diagonal exactly") {
  const Matrix lower = Matrix::from_rows({{-1.5, 0, 0}, {-0.65, -2.1, 0}, {-0.61, -4.6, -2.2}});
  const Spectrum s = eigenvalues(build_sigma_matrix(lower, 1e-7));
  CHECK(s.eigenvalues[0] == cplx(-1.5e-7, 0.0));
  CHECK(s.eigenvalues[2] == cplx(-2.2e-7, 0.0));
  CHECK(eigenvalues(build_sigma_matrix(lower, 0.0)).abscissa == 0.0);

  // Block triangular after permutation: one isolated eigenvalue and a 2x2 block.
  const Matrix mixed = Matrix::from_rows({{-3, 0, 0}, {1, 0, 2}, {4, -2, 0}});
  const Spectrum t = eigenvalues(mixed);
  CHECK(t.eigenvalues[0].real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(t.eigenvalues[0].imag()) == doctest::Approx(2.0));
  CHECK(t.eigenvalues[2] == cplx(-3.0, 0.0));
}

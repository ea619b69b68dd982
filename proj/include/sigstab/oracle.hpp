#pragma once

// Brute-force references and deterministic generators for the test suites.
// Nothing here is used on the production analysis path.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sigstab/matrix.hpp"
#include "sigstab/poly.hpp"

namespace sigstab::oracle {

using Rational = boost::multiprecision::cpp_rational;

class DimensionTooLarge : public std::invalid_argument {
 public:
  explicit DimensionTooLarge(std::size_t n);
};

class NoCrossingInRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact bivariate polynomial: (x-degree, sigma-degree) -> coefficient.
/// Only nonzero terms are stored.
struct BiPoly {
  std::map<std::pair<int, int>, Rational> terms;

  Rational coefficient(int x_degree, int sigma_degree) const;
  double coefficient_as_double(int x_degree, int sigma_degree) const;
  /// Coefficient of x^i as a polynomial in sigma.
  RealPoly x_coefficient(int i) const;
};

BiPoly operator*(const BiPoly& a, const BiPoly& b);

/// det(xI - M_sigma) expanded exactly over all n! permutations. Every finite
/// double is a dyadic rational, so the expansion is exact. n <= 6.
BiPoly leibniz_charpoly_sigma(const Matrix& m);

struct GridScan {
  double sigma_estimate = 0.0;  ///< linear interpolation inside the bracket
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double spacing = 0.0;
  std::vector<std::pair<double, double>> profile;  ///< (sigma, abscissa)
};

/// Samples the spectral abscissa of M_sigma at `steps` uniform points on
/// [sigma_lo, sigma_hi] and reports the crossing nearest sigma_hi, i.e. the
/// first bracket met scanning downward with abscissa >= 0 on the left and < 0
/// on the right. Throws NoCrossingInRange.
GridScan grid_scan_crossing(const Matrix& m, double sigma_lo, double sigma_hi, int steps);

/// Counter-based generator: output k of stream `seed` is
/// splitmix64_mix(seed + (k + 1) * 0x9E3779B97F4A7C15). Any output can be
/// computed independently of the others, so streams are reproducible across
/// platforms and split trivially (see split()).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t word(std::uint64_t k) const noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double unit(std::uint64_t k) const noexcept;
  double uniform(std::uint64_t k, double lo, double hi) const noexcept { return lo + (hi - lo) * unit(k); }
  /// Uniform integer in [lo, hi].
  long integer(std::uint64_t k, long lo, long hi) const noexcept;
  /// Independent child stream.
  CounterRng split(std::uint64_t stream) const noexcept;

  /// Sequential convenience: the next counter value.
  double next_uniform(double lo, double hi) noexcept { return uniform(counter_++, lo, hi); }

  static std::uint64_t mix(std::uint64_t z) noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Entry (i, j) draws from counters 2(i n + j) (value) and 2(i n + j) + 1
/// (sparsity coin). Diagonal entries are never zeroed.
Matrix random_matrix(std::size_t n, std::uint64_t seed, std::pair<double, double> diag_range,
                     std::pair<double, double> offdiag_range, double sparsity);

/// Integer entries: diagonal uniform in [diag_lo, diag_hi], off-diagonal in
/// [off_lo, off_hi], both inclusive.
Matrix random_integer_matrix(std::size_t n, std::uint64_t seed, long diag_lo, long diag_hi, long off_lo, long off_hi);

/// Polynomial with the given leading coefficient and planted real roots.
RealPoly planted_root_poly(const std::vector<double>& roots, double leading);

/// A matrix whose crossing is a complex pair with sigma* - max(Omega) > min_slack,
/// confirmed by grid scan. Searches seeds [seed_begin, seed_begin + tries).
struct SlackFixture {
  std::uint64_t seed = 0;
  Matrix matrix{1};
  double sigma_star = 0.0;
  double max_omega = 0.0;
  double slack = 0.0;
};
std::optional<SlackFixture> find_strict_slack_fixture(std::size_t n, std::uint64_t seed_begin, int tries,
                                                      double min_slack);

}  // namespace sigstab::oracle

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sigstab/exec.hpp"
#include "sigstab/matrix.hpp"
#include "sigstab/poly.hpp"

namespace sigstab {

/// Above this dimension, interpolation at nodes 0..n is poorly conditioned.
inline constexpr std::size_t kConditioningLimit = 25;

/// Characteristic polynomial det(xI - M_sigma) = sum_i p_i(sigma) x^i, with
/// each coefficient p_i a polynomial in sigma of degree at most n - i.
struct SigmaCharPoly {
  std::size_t n = 0;
  std::vector<RealPoly> p;  ///< n + 1 entries; p[n] == 1
  std::vector<std::string> warnings;

  /// Coefficients of the x-polynomial at a fixed sigma.
  std::vector<double> at(double sigma) const;
};

/// Ascending x-coefficients of det(xI - M_sigma) by the Faddeev-LeVerrier
/// recurrence. The result is monic.
std::vector<double> charpoly_at(const Matrix& m, double sigma);

/// Recovers every p_i by evaluating charpoly_at at sigma = 0, 1, ..., n and
/// interpolating each coefficient index with Newton divided differences.
/// For integer matrices every intermediate is an integer, so the result is
/// exact while magnitudes stay below 2^53.
///
/// The n + 1 node evaluations are independent; Exec::parallel spreads them
/// over OpenMP threads. Assembly is sequential, so both paths agree bit for bit.
SigmaCharPoly coefficient_polynomials(const Matrix& m, Exec exec = Exec::parallel);

/// Elementary symmetric sums e_1..e_n of (-m_11, ..., -m_nn). e_{n-i} is the
/// coefficient of sigma^{n-i} in p_i.
std::vector<double> leading_diagonal_sums(const Matrix& m);

/// Newton divided-difference interpolant through (nodes[k], values[k]),
/// returned in monomial form. Exposed for testing.
std::vector<double> newton_interpolate(const std::vector<double>& nodes, const std::vector<double>& values);

}  // namespace sigstab

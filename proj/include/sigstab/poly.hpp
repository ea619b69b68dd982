#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sigstab {

/// Coefficients below this fraction of the largest one are treated as
/// interpolation noise when canonicalizing.
inline constexpr double kNoiseFloor = 1e-13;
/// Relative coefficient cutoff for remainders in the numeric gcd.
inline constexpr double kGcdCutoff = 1e-12;
inline constexpr double kDefaultRootTol = 1e-10;

class ZeroPolynomial : public std::domain_error {
 public:
  ZeroPolynomial() : std::domain_error("operation undefined for the zero polynomial") {}
};

/// Root refinement ran out of iterations before the bracket shrank to tol.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(double lo, double hi);
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Univariate real polynomial with ascending coefficients (coeffs[k]
/// multiplies x^k). Trailing zeros are always stripped; the zero polynomial
/// is the single coefficient 0.
class RealPoly {
 public:
  RealPoly() : c_{0.0} {}
  explicit RealPoly(std::vector<double> coeffs);
  RealPoly(std::initializer_list<double> coeffs) : RealPoly(std::vector<double>(coeffs)) {}

  /// Zeroes every coefficient with |c| < rel * max|c| before stripping.
  static RealPoly with_noise_floor(std::vector<double> coeffs, double rel = kNoiseFloor);
  static RealPoly constant(double c) { return RealPoly({c}); }
  /// Monic product of (x - r) over the given roots.
  static RealPoly from_roots(std::span<const double> roots);

  std::size_t degree() const noexcept { return c_.size() - 1; }
  bool is_zero() const noexcept { return c_.size() == 1 && c_[0] == 0.0; }
  const std::vector<double>& coeffs() const noexcept { return c_; }
  /// Coefficient of x^k; zero beyond the degree.
  double operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0.0; }
  double leading() const noexcept { return c_.back(); }
  double max_abs() const noexcept;

  /// Horner evaluation.
  double eval(double x) const noexcept;
  double operator()(double x) const noexcept { return eval(x); }
  /// sum_k |c_k| |x|^k, the magnitude bound for rounding error in eval(x).
  double eval_scale(double x) const noexcept;

  RealPoly derivative() const;
  RealPoly scaled(double f) const;

  friend bool operator==(const RealPoly&, const RealPoly&) = default;

 private:
  std::vector<double> c_;
};

RealPoly operator+(const RealPoly& a, const RealPoly& b);
RealPoly operator-(const RealPoly& a, const RealPoly& b);
RealPoly operator*(const RealPoly& a, const RealPoly& b);

/// Quotient and remainder of a / b. Throws ZeroPolynomial when b is zero.
std::pair<RealPoly, RealPoly> divmod(const RealPoly& a, const RealPoly& b);

/// Numeric gcd by the Euclidean algorithm; remainder coefficients below
/// cutoff (relative to the dividend) are dropped. Result has max|c| = 1.
RealPoly gcd(const RealPoly& a, const RealPoly& b, double cutoff = kGcdCutoff);

/// Sign alternations in the coefficient sequence, zeros skipped.
int descartes_sign_changes(const RealPoly& p);

/// Number of distinct real roots in (a, b], by Sturm's theorem.
int sturm_count(const RealPoly& p, double a, double b);

/// 1 + max_{k<d} |a_k| / |a_d|; every root has modulus strictly below it.
double cauchy_bound(const RealPoly& p);

struct Root {
  double value;
  double residual;    ///< |p(value)|
  int multiplicity;
};

/// Distinct real roots in ascending order.
struct RootList {
  std::vector<Root> roots;

  bool empty() const noexcept { return roots.empty(); }
  std::size_t size() const noexcept { return roots.size(); }
  std::vector<double> values() const;
  /// Number of roots with a <= r <= b.
  std::size_t count_in(double a, double b) const noexcept;
};

struct RootOptions {
  double tol = kDefaultRootTol;
  int max_iterations = 200;
};

/// All real roots of p to absolute accuracy tol. Roots are isolated with a
/// Sturm chain of the square-free part on the Cauchy interval, bracketed by
/// bisection and polished with Newton steps. Multiplicities come from the
/// square-free decomposition gcd(p, p').
///
/// Throws ZeroPolynomial for p == 0 and NoConvergence when a bracket does not
/// reach tol within max_iterations bisection steps.
RootList real_roots(const RealPoly& p, const RootOptions& opts);
inline RootList real_roots(const RealPoly& p, double tol = kDefaultRootTol) {
  return real_roots(p, RootOptions{tol, 200});
}

}  // namespace sigstab

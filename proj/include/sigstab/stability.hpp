#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sigstab/charpoly.hpp"
#include "sigstab/eig.hpp"
#include "sigstab/exec.hpp"
#include "sigstab/matrix.hpp"
#include "sigstab/poly.hpp"

namespace sigstab {

inline constexpr double kDefaultSigmaTol = 1e-10;
inline constexpr double kDefaultTheoremTol = 1e-6;
inline constexpr double kSignZeroTol = 1e-12;
/// Abscissa samples used to locate the last sign change on the bracket.
inline constexpr int kScanSamples = 256;
/// Abscissa samples above sigma* that certify stability there.
inline constexpr int kCertificationSamples = 64;
/// Times a failed certificate may restart the search beyond the bad sample.
inline constexpr int kMaxRefinements = 16;

/// No interval with abscissa >= 0 at its left end and < 0 at its right end.
class NoBracket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certification kept finding sigma above the crossing with abscissa >= 0.
class NotSigmaStable : public std::runtime_error {
 public:
  explicit NotSigmaStable(double sigma_bad);
  double sigma_bad() const noexcept { return sigma_bad_; }

 private:
  double sigma_bad_;
};

struct OmegaSet {
  /// Real roots of p_i for i = 0..n-1.
  std::vector<RootList> per_coefficient;
  /// Indices i whose p_i is identically zero (no root set defined).
  std::vector<std::size_t> zero_coefficients;
  std::optional<double> max_omega;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

enum class Crossing { real, complex_pair, ambiguous };

const char* to_string(Crossing c) noexcept;

struct CriticalSigma {
  double sigma_star = 0.0;
  Crossing crossing = Crossing::real;
  std::vector<std::complex<double>> leading;  ///< leading eigenvalues at sigma_star
  Spectrum spectrum;                          ///< of M_{sigma_star}
  /// (sigma_star, certified_hi] sampled with abscissa < 0.
  double certified_hi = 0.0;
  /// sigma > sigma_G is also covered by the Gershgorin bound.
  bool gershgorin_tail = false;
  int bisection_steps = 0;
};

struct CriticalOptions {
  double tol = kDefaultSigmaTol;
  int max_bisections = 200;
  /// Required when some diagonal entry is non-negative.
  std::optional<std::pair<double, double>> bracket;
};

struct TheoremVerdict {
  bool holds = false;
  double residual = 0.0;  ///< |sigma* - max(Omega)|
  bool max_omega_absent = false;
};

struct CorollaryVerdict {
  bool holds = false;
  double slack = 0.0;  ///< sigma* - max(Omega)
};

struct TheoremCheck {
  std::optional<TheoremVerdict> theorem2;
  std::optional<CorollaryVerdict> corollary;
  double tolerance = 0.0;  ///< theorem_tol * max(1, sigma*)
};

struct ScalingCheck {
  std::vector<std::complex<double>> mbar0_eigenvalues;
  std::vector<std::complex<double>> p0_roots;
  /// Max difference between sorted real parts and sorted imaginary parts.
  double multiset_residual = 0.0;
  bool multiset_match = false;
  bool leading_complex_mbar0 = false;
  std::optional<double> mbar0_abscissa;
  std::optional<double> p0_root_match_residual;  ///< |p0(a)| / eval scale at a
  std::optional<double> det_at_mbar0_abscissa;   ///< det(M_a)
  std::optional<double> min_eig_residual;        ///< min |lambda(M_a)| / ||M_a||
  bool holds = false;
};

struct Theorem1Check {
  bool verified = true;
  int coefficients_checked = 0;
  int sign_flips_checked = 0;
  std::vector<std::string> failures;
};

struct AnalyzeOptions {
  double tol = kDefaultSigmaTol;
  double theorem_tol = kDefaultTheoremTol;
  std::optional<std::pair<double, double>> bracket;
  Exec exec = Exec::parallel;
};

struct StabilityReport {
  std::size_t n = 0;
  SigmaCharPoly charpoly;
  std::vector<double> diagonal_sums;
  std::optional<OmegaSet> omega;
  std::optional<CriticalSigma> critical;
  std::optional<double> gershgorin;
  std::optional<TheoremCheck> theorems;
  std::optional<ScalingCheck> scaling;
  std::optional<Theorem1Check> theorem1;
  bool sign_changes_verified = false;
  std::map<std::string, double> timings_ms;
  std::vector<std::string> warnings;
  /// Checks that could not run (input or convergence problems).
  std::vector<std::string> errors;

  /// Every applicable theorem check holds.
  bool all_checks_hold() const;
  /// Some check ran and produced a negative verdict.
  bool any_check_failed() const;
};

/// Real roots of every p_i, i < n, and their global maximum.
OmegaSet omega_set(const SigmaCharPoly& scp, double tol = kDefaultRootTol);

/// Sign of p_i(sigma) for i = 0..n. Zero when |p_i(sigma)| is within
/// zero_tol of its evaluation scale sum_k |c_k| |sigma|^k.
std::vector<Sign> sign_table(const SigmaCharPoly& scp, double sigma, double zero_tol = kSignZeroTol);

/// Locates the last zero crossing of the spectral abscissa of M_sigma.
///
/// With a negative diagonal the bracket is [0, sigma_G + 1]: the abscissa at
/// sigma = 0 is >= 0 because tr(M_0) = 0, and Gershgorin makes it negative at
/// the right end. The bracket is sampled at kScanSamples points, the last sign
/// change is refined by bisection to width tol, and the abscissa is checked at
/// kCertificationSamples offset points above sigma*. A non-negative sample
/// there restarts the bisection beyond it.
CriticalSigma critical_sigma(const Matrix& m, const CriticalOptions& opts = {});

/// Theorem verdicts: sigma* == max(Omega) for a real crossing, and
/// max(Omega) <= sigma* for a complex-pair crossing.
TheoremCheck check_theorem2(const CriticalSigma& crit, const OmegaSet& omega, double theorem_tol = kDefaultTheoremTol);
TheoremCheck check_theorem2(const Matrix& m, double tol = kDefaultSigmaTol, double theorem_tol = kDefaultTheoremTol);

/// Compares the spectrum of I - D^{-1} M with the complex roots of p_0, and
/// checks that p_0 and det(M_sigma) vanish at the abscissa of I - D^{-1} M
/// when its leading eigenvalue is real. Throws ZeroDiagonal.
ScalingCheck check_scaling_relation(const Matrix& m, const SigmaCharPoly& scp, double tol = kDefaultTheoremTol);
ScalingCheck check_scaling_relation(const Matrix& m, double tol = kDefaultTheoremTol);

/// For each p_i: signs at the midpoints between consecutive real roots flip
/// across every odd-multiplicity root, and beyond the largest root the sign
/// is positive when the leading coefficient is.
Theorem1Check check_theorem1(const SigmaCharPoly& scp, const OmegaSet& omega, double zero_tol = kSignZeroTol);

/// Runs every check and collects the results. Failures in one check are
/// recorded in errors and do not stop the others.
StabilityReport analyze(const Matrix& m, const AnalyzeOptions& opts = {});

/// One row of a sigma sweep.
struct SweepRow {
  double sigma = 0.0;
  double abscissa = 0.0;
  std::vector<double> p;     ///< p_0..p_{n-1} at sigma
  std::vector<Sign> signs;   ///< matching signs
};

/// Evaluates abscissa and coefficient values on a uniform grid of `steps`
/// points over [sigma_min, sigma_max]. Grid points are independent; the
/// parallel path yields the same rows as the serial one.
std::vector<SweepRow> sweep(const Matrix& m, double sigma_min, double sigma_max, int steps, Exec exec = Exec::parallel);
std::vector<SweepRow> sweep(const Matrix& m, const SigmaCharPoly& scp, double sigma_min, double sigma_max, int steps,
                            Exec exec = Exec::parallel);

/// Analyzes a batch of matrices, one report each, in input order.
std::vector<StabilityReport> analyze_batch(const std::vector<Matrix>& ms, const AnalyzeOptions& opts = {});

}  // namespace sigstab

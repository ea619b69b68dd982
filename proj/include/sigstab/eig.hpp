#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sigstab/matrix.hpp"

namespace sigstab {

/// Eigenvalues whose real part is within this of the abscissa are leading.
inline constexpr double kLeadingTieTol = 1e-9;
/// |Im| <= kRealImagTol * max(1, ||A||_inf) classifies an eigenvalue as real.
inline constexpr double kRealImagTol = 1e-7;

class EigNoConvergence : public std::runtime_error {
 public:
  explicit EigNoConvergence(int iterations);
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

struct Spectrum {
  /// Sorted by decreasing real part, then decreasing imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  double abscissa = 0.0;
  /// Indices into eigenvalues attaining the abscissa (within kLeadingTieTol).
  std::vector<std::size_t> leading;
  /// Some leading eigenvalue is real under the imaginary-part threshold.
  bool real_crossing = false;
  /// Some leading eigenvalue has a non-negligible imaginary part.
  bool complex_crossing = false;
  double imag_tol = 0.0;
};

/// All eigenvalues of a real square matrix: balancing, Householder reduction
/// to upper Hessenberg form, then Francis double-shift QR. The iteration
/// budget is 30 n sweeps in total; EigNoConvergence when it runs out.
Spectrum eigenvalues(const Matrix& a);

/// Maximum real part over the eigenvalues of M_sigma.
double spectral_abscissa(const Matrix& m, double sigma);

/// Eigenvalues of the companion matrix of p (ascending coefficients, leading
/// coefficient nonzero): the complex roots of p.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

}  // namespace sigstab

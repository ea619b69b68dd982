#include "sigstab/stability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <tuple>

namespace sigstab {

NotSigmaStable::NotSigmaStable(double sigma_bad)
    : std::runtime_error("abscissa is non-negative at sigma = " + std::to_string(sigma_bad) +
                         " above the critical crossing"),
      sigma_bad_(sigma_bad) {}

const char* to_string(Crossing c) noexcept {
  switch (c) {
    case Crossing::real:
      return "RealCrossing";
    case Crossing::complex_pair:
      return "ComplexPairCrossing";
    case Crossing::ambiguous:
      return "Ambiguous";
  }
  return "Unknown";
}

namespace {

Sign classify(double value, double scale, double zero_tol) {
  if (std::abs(value) <= zero_tol * scale) return Sign::zero;
  return value > 0.0 ? Sign::positive : Sign::negative;
}

Sign sign_at(const RealPoly& p, double sigma, double zero_tol) {
  return classify(p.eval(sigma), p.eval_scale(sigma), zero_tol);
}

double max_abs_diff_sorted(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

OmegaSet omega_set(const SigmaCharPoly& scp, double tol) {
  OmegaSet out;
  out.per_coefficient.resize(scp.n);
  for (std::size_t i = 0; i < scp.n; ++i) {
    if (scp.p[i].is_zero()) {
      out.zero_coefficients.push_back(i);
      continue;
    }
    out.per_coefficient[i] = real_roots(scp.p[i], tol);
    for (const Root& r : out.per_coefficient[i].roots)
      if (!out.max_omega || r.value > *out.max_omega) out.max_omega = r.value;
  }
  return out;
}

std::vector<Sign> sign_table(const SigmaCharPoly& scp, double sigma, double zero_tol) {
  std::vector<Sign> out;
  out.reserve(scp.p.size());
  for (const RealPoly& p : scp.p) out.push_back(sign_at(p, sigma, zero_tol));
  return out;
}

CriticalSigma critical_sigma(const Matrix& m, const CriticalOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("sigma tolerance must be positive");
  const bool negative_diag = has_negative_diagonal(m);
  double lo = 0.0;
  double hi = 0.0;
  if (opts.bracket) {
    std::tie(lo, hi) = *opts.bracket;
    if (!(lo < hi)) throw NoBracket("bracket must satisfy lo < hi");
  } else if (negative_diag) {
    hi = gershgorin_sigma(m) + 1.0;
  } else {
    throw NoBracket("diagonal is not strictly negative; a sigma bracket is required");
  }

  auto abscissa = [&](double s) { return spectral_abscissa(m, s); };

  // Last sampled point with non-negative abscissa. On the default bracket the
  // left end is non-negative by the zero-trace argument, whatever rounding says.
  const int samples = kScanSamples;
  const double step = (hi - lo) / samples;
  int last_nonneg = -1;
  for (int k = 0; k <= samples; ++k) {
    const double s = (k == samples) ? hi : lo + step * k;
    const bool nonneg = (k == 0 && !opts.bracket) || abscissa(s) >= 0.0;
    if (nonneg) last_nonneg = k;
  }
  if (last_nonneg < 0) throw NoBracket("abscissa is negative throughout the bracket");
  if (last_nonneg == samples) throw NoBracket("abscissa is non-negative at the right end of the bracket");

  double a = lo + step * last_nonneg;
  double b = (last_nonneg + 1 == samples) ? hi : lo + step * (last_nonneg + 1);
  CriticalSigma out;
  for (int round = 0;; ++round) {
    while (b - a > opts.tol && out.bisection_steps < opts.max_bisections) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (abscissa(mid) >= 0.0 ? a : b) = mid;
      ++out.bisection_steps;
    }
    if (b - a > opts.tol && 0.5 * (a + b) > a && 0.5 * (a + b) < b) throw NoConvergence(a, b);
    out.sigma_star = 0.5 * (a + b);

    // Offset samples, so the certificate does not reuse the scan points. A
    // non-negative sample means the scan stepped over a later crossing.
    int bad = -1;
    auto at = [&](int k) { return out.sigma_star + (hi - out.sigma_star) * (k + 0.5) / kCertificationSamples; };
    for (int k = 0; k < kCertificationSamples; ++k)
      if (abscissa(at(k)) >= 0.0) bad = k;
    if (bad < 0) break;
    if (round == kMaxRefinements) throw NotSigmaStable(at(bad));
    a = at(bad);
    b = (bad + 1 == kCertificationSamples) ? hi : at(bad + 1);
  }

  out.spectrum = eigenvalues(build_sigma_matrix(m, out.sigma_star));
  for (std::size_t idx : out.spectrum.leading) out.leading.push_back(out.spectrum.eigenvalues[idx]);
  if (out.spectrum.real_crossing && out.spectrum.complex_crossing) {
    out.crossing = Crossing::ambiguous;
  } else if (out.spectrum.real_crossing) {
    out.crossing = Crossing::real;
  } else {
    out.crossing = Crossing::complex_pair;
  }
  out.certified_hi = hi;
  out.gershgorin_tail = negative_diag;
  return out;
}

TheoremCheck check_theorem2(const CriticalSigma& crit, const OmegaSet& omega, double theorem_tol) {
  TheoremCheck out;
  out.tolerance = theorem_tol * std::max(1.0, crit.sigma_star);
  if (crit.crossing == Crossing::real) {
    TheoremVerdict v;
    if (!omega.max_omega) {
      v.max_omega_absent = true;
      v.holds = false;
      v.residual = std::numeric_limits<double>::infinity();
    } else {
      v.residual = std::abs(crit.sigma_star - *omega.max_omega);
      v.holds = v.residual <= out.tolerance;
    }
    out.theorem2 = v;
  } else if (crit.crossing == Crossing::complex_pair) {
    CorollaryVerdict v;
    v.slack = omega.max_omega ? crit.sigma_star - *omega.max_omega : std::numeric_limits<double>::infinity();
    v.holds = v.slack >= -out.tolerance;
    out.corollary = v;
  }
  return out;
}

TheoremCheck check_theorem2(const Matrix& m, double tol, double theorem_tol) {
  const CriticalSigma crit = critical_sigma(m, CriticalOptions{tol, 200, std::nullopt});
  const OmegaSet omega = omega_set(coefficient_polynomials(m));
  return check_theorem2(crit, omega, theorem_tol);
}

ScalingCheck check_scaling_relation(const Matrix& m, const SigmaCharPoly& scp, double tol) {
  const Matrix mbar0 = build_mbar0(m);
  const Spectrum mbar = eigenvalues(mbar0);
  ScalingCheck out;
  out.mbar0_eigenvalues = mbar.eigenvalues;
  out.p0_roots = polynomial_roots(scp.p[0].coeffs());

  double magnitude = 1.0;
  for (const auto& z : out.mbar0_eigenvalues) magnitude = std::max(magnitude, std::abs(z));
  if (out.p0_roots.size() == out.mbar0_eigenvalues.size()) {
    std::vector<double> re_a, im_a, re_b, im_b;
    for (const auto& z : out.mbar0_eigenvalues) {
      re_a.push_back(z.real());
      im_a.push_back(z.imag());
    }
    for (const auto& z : out.p0_roots) {
      re_b.push_back(z.real());
      im_b.push_back(z.imag());
    }
    out.multiset_residual = std::max(max_abs_diff_sorted(re_a, re_b), max_abs_diff_sorted(im_a, im_b));
    out.multiset_match = out.multiset_residual <= tol * magnitude;
  } else {
    out.multiset_residual = std::numeric_limits<double>::infinity();
    out.multiset_match = false;
  }

  out.leading_complex_mbar0 = !mbar.real_crossing;
  bool pointwise = true;
  if (!out.leading_complex_mbar0) {
    // The largest real leading eigenvalue; it attains the abscissa up to ties.
    double a = -std::numeric_limits<double>::infinity();
    for (std::size_t idx : mbar.leading) {
      const auto& z = mbar.eigenvalues[idx];
      if (std::abs(z.imag()) <= mbar.imag_tol) a = std::max(a, z.real());
    }
    out.mbar0_abscissa = a;
    const RealPoly& p0 = scp.p[0];
    const double scale = p0.eval_scale(std::max(1.0, std::abs(a)));
    out.p0_root_match_residual = scale > 0.0 ? std::abs(p0.eval(a)) / scale : std::abs(p0.eval(a));
    const Matrix ma = build_sigma_matrix(m, a);
    out.det_at_mbar0_abscissa = determinant(ma);
    double min_abs = std::numeric_limits<double>::infinity();
    for (const auto& z : eigenvalues(ma).eigenvalues) min_abs = std::min(min_abs, std::abs(z));
    const double norm = ma.norm_inf();
    out.min_eig_residual = norm > 0.0 ? min_abs / norm : min_abs;
    pointwise = *out.p0_root_match_residual <= tol && *out.min_eig_residual <= tol;
  }
  out.holds = out.multiset_match && pointwise;
  return out;
}

ScalingCheck check_scaling_relation(const Matrix& m, double tol) {
  return check_scaling_relation(m, coefficient_polynomials(m), tol);
}

Theorem1Check check_theorem1(const SigmaCharPoly& scp, const OmegaSet& omega, double zero_tol) {
  Theorem1Check out;
  const std::size_t n = scp.n;
  for (std::size_t i = 0; i < n && i < omega.per_coefficient.size(); ++i) {
    const auto& roots = omega.per_coefficient[i].roots;
    const RealPoly& p = scp.p[i];
    if (roots.empty() || p.is_zero()) continue;
    ++out.coefficients_checked;
    auto fail = [&](const std::string& what) {
      out.verified = false;
      out.failures.push_back("p_" + std::to_string(i) + ": " + what);
    };

    std::vector<double> probes{roots.front().value - 1.0};
    for (std::size_t k = 0; k + 1 < roots.size(); ++k) probes.push_back(0.5 * (roots[k].value + roots[k + 1].value));
    probes.push_back(roots.back().value + 1.0);

    std::vector<Sign> signs;
    for (double t : probes) signs.push_back(sign_at(p, t, zero_tol));
    if (std::find(signs.begin(), signs.end(), Sign::zero) != signs.end()) {
      fail("vanishes between its roots");
      continue;
    }
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const bool odd = roots[k].multiplicity % 2 == 1;
      const bool flipped = signs[k] != signs[k + 1];
      ++out.sign_flips_checked;
      if (odd != flipped) fail("sign does not follow multiplicity at root " + std::to_string(roots[k].value));
    }
    if (p[n - i] > 0.0 && signs.back() != Sign::positive) fail("negative beyond its largest root");
  }
  return out;
}

bool StabilityReport::any_check_failed() const {
  if (theorems) {
    if (theorems->theorem2 && !theorems->theorem2->holds) return true;
    if (theorems->corollary && !theorems->corollary->holds) return true;
  }
  if (scaling && !scaling->holds) return true;
  if (theorem1 && !theorem1->verified) return true;
  return false;
}

bool StabilityReport::all_checks_hold() const { return errors.empty() && !any_check_failed(); }

StabilityReport analyze(const Matrix& m, const AnalyzeOptions& opts) {
  StabilityReport rep;
  rep.n = m.n();
  Stopwatch total;

  {
    Stopwatch t;
    rep.charpoly = coefficient_polynomials(m, opts.exec);
    rep.diagonal_sums = leading_diagonal_sums(m);
    rep.timings_ms["coefficient_polynomials"] = t.ms();
    for (const auto& w : rep.charpoly.warnings) rep.warnings.push_back(w);
  }

  try {
    Stopwatch t;
    rep.omega = omega_set(rep.charpoly, kDefaultRootTol);
    rep.timings_ms["omega_set"] = t.ms();
    for (std::size_t i : rep.omega->zero_coefficients)
      rep.warnings.push_back("p_" + std::to_string(i) + " is identically zero; it contributes no roots");
    if (!rep.omega->max_omega) rep.warnings.push_back("max(Omega) absent: no coefficient polynomial has a real root");
  } catch (const std::exception& e) {
    rep.errors.push_back(std::string("omega_set: ") + e.what());
  }

  try {
    rep.gershgorin = gershgorin_sigma(m);
  } catch (const NonNegativeDiagonal& e) {
    rep.warnings.push_back(std::string("gershgorin unavailable: ") + e.what());
  }

  try {
    Stopwatch t;
    rep.critical = critical_sigma(m, CriticalOptions{opts.tol, 200, opts.bracket});
    rep.timings_ms["critical_sigma"] = t.ms();
    if (rep.critical->crossing == Crossing::ambiguous)
      rep.warnings.push_back("ambiguous crossing: real and complex eigenvalues tie at the abscissa");
  } catch (const NoBracket& e) {
    if (opts.bracket) {
      rep.errors.push_back(std::string("critical_sigma: ") + e.what());
    } else {
      rep.warnings.push_back(std::string("critical sigma unavailable: ") + e.what());
    }
  } catch (const std::exception& e) {
    rep.errors.push_back(std::string("critical_sigma: ") + e.what());
  }

  if (rep.critical && rep.omega) {
    rep.theorems = check_theorem2(*rep.critical, *rep.omega, opts.theorem_tol);
    if (rep.theorems->theorem2 && rep.theorems->theorem2->max_omega_absent)
      rep.warnings.push_back("anomaly: real crossing with max(Omega) absent");
  }

  try {
    Stopwatch t;
    rep.scaling = check_scaling_relation(m, rep.charpoly, opts.theorem_tol);
    rep.timings_ms["scaling_relation"] = t.ms();
    if (rep.scaling->leading_complex_mbar0)
      rep.warnings.push_back("leading eigenvalue of I - D^-1 M is complex; only the multiset check applies");
  } catch (const ZeroDiagonal& e) {
    rep.warnings.push_back(std::string("scaling relation unavailable: ") + e.what());
  } catch (const std::exception& e) {
    rep.errors.push_back(std::string("scaling_relation: ") + e.what());
  }

  if (rep.omega) {
    Stopwatch t;
    rep.theorem1 = check_theorem1(rep.charpoly, *rep.omega);
    rep.sign_changes_verified = rep.theorem1->verified;
    rep.timings_ms["theorem1"] = t.ms();
  }

  rep.timings_ms["total"] = total.ms();
  return rep;
}

std::vector<SweepRow> sweep(const Matrix& m, const SigmaCharPoly& scp, double sigma_min, double sigma_max, int steps,
                            Exec exec) {
  if (!(sigma_min < sigma_max)) throw std::invalid_argument("sweep requires sigma_min < sigma_max");
  if (steps < 2) throw std::invalid_argument("sweep requires at least 2 steps");
  const std::size_t n = m.n();
  std::vector<SweepRow> rows(static_cast<std::size_t>(steps));
  std::vector<std::exception_ptr> failures(rows.size());

  auto fill = [&](long k) {
    try {
      SweepRow& row = rows[static_cast<std::size_t>(k)];
      row.sigma = (k == steps - 1) ? sigma_max : sigma_min + (sigma_max - sigma_min) * static_cast<double>(k) / (steps - 1);
      row.abscissa = spectral_abscissa(m, row.sigma);
      row.p.resize(n);
      row.signs.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        row.p[i] = scp.p[i].eval(row.sigma);
        row.signs[i] = sign_at(scp.p[i], row.sigma, kSignZeroTol);
      }
    } catch (...) {
      failures[static_cast<std::size_t>(k)] = std::current_exception();
    }
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < steps; ++k) fill(k);
  } else {
    for (long k = 0; k < steps; ++k) fill(k);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

std::vector<SweepRow> sweep(const Matrix& m, double sigma_min, double sigma_max, int steps, Exec exec) {
  return sweep(m, coefficient_polynomials(m, exec), sigma_min, sigma_max, steps, exec);
}

}  // namespace sigstab

#include "sigstab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sigstab/charpoly.hpp"
#include "sigstab/eig.hpp"
#include "sigstab/stability.hpp"

namespace sigstab::oracle {

DimensionTooLarge::DimensionTooLarge(std::size_t n)
    : std::invalid_argument("exact expansion supports n <= 6, got " + std::to_string(n)) {}

Rational BiPoly::coefficient(int x_degree, int sigma_degree) const {
  auto it = terms.find({x_degree, sigma_degree});
  return it == terms.end() ? Rational(0) : it->second;
}

double BiPoly::coefficient_as_double(int x_degree, int sigma_degree) const {
  return static_cast<double>(coefficient(x_degree, sigma_degree));
}

RealPoly BiPoly::x_coefficient(int i) const {
  std::vector<double> c;
  for (const auto& [key, value] : terms) {
    if (key.first != i) continue;
    if (static_cast<std::size_t>(key.second) >= c.size()) c.resize(key.second + 1, 0.0);
    c[key.second] = static_cast<double>(value);
  }
  if (c.empty()) return RealPoly{};
  return RealPoly(std::move(c));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [ka, va] : a.terms) {
    for (const auto& [kb, vb] : b.terms) {
      Rational& slot = out.terms[{ka.first + kb.first, ka.second + kb.second}];
      slot += va * vb;
    }
  }
  std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
  return out;
}

BiPoly leibniz_charpoly_sigma(const Matrix& m) {
  const std::size_t n = m.n();
  if (n > 6) throw DimensionTooLarge(n);

  // Entries of xI - M_sigma.
  std::vector<BiPoly> entry(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BiPoly& e = entry[i * n + j];
      if (i == j) {
        e.terms[{1, 0}] = 1;
        if (m(i, i) != 0.0) e.terms[{0, 1}] = -Rational(m(i, i));
      } else if (m(i, j) != 0.0) {
        e.terms[{0, 0}] = -Rational(m(i, j));
      }
    }
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BiPoly total;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    BiPoly term;
    term.terms[{0, 0}] = (inversions % 2 == 0) ? 1 : -1;
    for (std::size_t i = 0; i < n && !term.terms.empty(); ++i) term = term * entry[i * n + perm[i]];
    for (const auto& [k, v] : term.terms) total.terms[k] += v;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::erase_if(total.terms, [](const auto& kv) { return kv.second == 0; });
  return total;
}

GridScan grid_scan_crossing(const Matrix& m, double sigma_lo, double sigma_hi, int steps) {
  if (steps < 2) throw std::invalid_argument("grid scan needs at least 2 steps");
  if (!(sigma_lo < sigma_hi)) throw std::invalid_argument("grid scan needs sigma_lo < sigma_hi");
  GridScan out;
  out.spacing = (sigma_hi - sigma_lo) / (steps - 1);
  out.profile.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double s = (k == steps - 1) ? sigma_hi : sigma_lo + out.spacing * k;
    out.profile.emplace_back(s, spectral_abscissa(m, s));
  }
  for (int k = steps - 2; k >= 0; --k) {
    const auto [s0, a0] = out.profile[k];
    const auto [s1, a1] = out.profile[k + 1];
    if (a0 >= 0.0 && a1 < 0.0) {
      out.bracket_lo = s0;
      out.bracket_hi = s1;
      out.sigma_estimate = s0 + (s1 - s0) * a0 / (a0 - a1);
      return out;
    }
  }
  throw NoCrossingInRange("no abscissa sign change in [" + std::to_string(sigma_lo) + ", " +
                          std::to_string(sigma_hi) + "]");
}

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::word(std::uint64_t k) const noexcept {
  return mix(seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::unit(std::uint64_t k) const noexcept {
  return static_cast<double>(word(k) >> 11) * 0x1.0p-53;
}

long CounterRng::integer(std::uint64_t k, long lo, long hi) const noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(word(k) % span);
}

CounterRng CounterRng::split(std::uint64_t stream) const noexcept {
  return CounterRng(mix(seed_ ^ mix(stream + 0x9E3779B97F4A7C15ULL)));
}

Matrix random_matrix(std::size_t n, std::uint64_t seed, std::pair<double, double> diag_range,
                     std::pair<double, double> offdiag_range, double sparsity) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (!(diag_range.first <= diag_range.second) || !(diag_range.second < 0.0))
    throw std::invalid_argument("diagonal range must be ordered and strictly negative");
  if (!(offdiag_range.first <= offdiag_range.second)) throw std::invalid_argument("off-diagonal range must be ordered");
  if (!(sparsity >= 0.0 && sparsity <= 1.0)) throw std::invalid_argument("sparsity must lie in [0, 1]");
  const CounterRng rng(seed);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t k = 2 * (i * n + j);
      if (i == j) {
        m(i, j) = rng.uniform(k, diag_range.first, diag_range.second);
      } else if (rng.unit(k + 1) >= sparsity) {
        m(i, j) = rng.uniform(k, offdiag_range.first, offdiag_range.second);
      }
    }
  }
  return m;
}

Matrix random_integer_matrix(std::size_t n, std::uint64_t seed, long diag_lo, long diag_hi, long off_lo,
                             long off_hi) {
  if (n == 0 || diag_lo > diag_hi || off_lo > off_hi) throw std::invalid_argument("invalid integer ranges");
  const CounterRng rng(seed);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<double>(i == j ? rng.integer(i * n + j, diag_lo, diag_hi)
                                           : rng.integer(i * n + j, off_lo, off_hi));
  return m;
}

RealPoly planted_root_poly(const std::vector<double>& roots, double leading) {
  return RealPoly::from_roots(roots).scaled(leading);
}

std::optional<SlackFixture> find_strict_slack_fixture(std::size_t n, std::uint64_t seed_begin, int tries,
                                                      double min_slack) {
  for (int t = 0; t < tries; ++t) {
    const std::uint64_t seed = seed_begin + static_cast<std::uint64_t>(t);
    const Matrix m = random_matrix(n, seed, {-5.0, -0.1}, {-5.0, 5.0}, 0.0);
    CriticalSigma crit;
    try {
      crit = critical_sigma(m);
    } catch (const std::exception&) {
      continue;
    }
    if (crit.crossing != Crossing::complex_pair) continue;
    const OmegaSet omega = omega_set(coefficient_polynomials(m, Exec::serial));
    if (!omega.max_omega) continue;
    const double slack = crit.sigma_star - *omega.max_omega;
    if (slack <= min_slack) continue;
    const GridScan scan = grid_scan_crossing(m, 0.0, gershgorin_sigma(m) + 1.0, 2001);
    if (std::abs(scan.sigma_estimate - crit.sigma_star) > 2.0 * scan.spacing) continue;
    return SlackFixture{seed, m, crit.sigma_star, *omega.max_omega, slack};
  }
  return std::nullopt;
}

}  // namespace sigstab::oracle

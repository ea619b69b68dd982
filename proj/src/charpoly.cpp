#include "sigstab/charpoly.hpp"

#include <omp.h>

#include <algorithm>

namespace sigstab {

int max_threads() noexcept { return omp_get_max_threads(); }

namespace {

using Wide = __float128;

// Faddeev-LeVerrier in extended precision. M_0 = 0, c_n = 1;
// M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
std::vector<Wide> faddeev_leverrier(const Matrix& m, double sigma) {
  const std::size_t n = m.n();
  // sigma * m_ii is formed in extended precision: rounding it to double would
  // perturb each node differently and the interpolation amplifies that.
  std::vector<Wide> a(m.data().begin(), m.data().end());
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] *= static_cast<Wide>(sigma);
  std::vector<Wide> mk(n * n, Wide(0));
  std::vector<Wide> next(n * n);
  std::vector<Wide> c(n + 1, Wide(0));
  c[n] = Wide(1);
  for (std::size_t k = 1; k <= n; ++k) {
    std::fill(next.begin(), next.end(), Wide(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        const Wide ail = a[i * n + l];
        if (ail == Wide(0)) continue;
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += ail * mk[l * n + j];
      }
    for (std::size_t i = 0; i < n; ++i) next[i * n + i] += c[n - k + 1];
    std::swap(mk, next);
    Wide tr = Wide(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) tr += a[i * n + j] * mk[j * n + i];
    c[n - k] = -tr / static_cast<Wide>(k);
  }
  return c;
}

template <class T>
std::vector<T> newton_interpolate_impl(const std::vector<T>& nodes, std::vector<T> dd) {
  const std::size_t m = nodes.size();
  if (m == 0 || dd.size() != m) throw std::invalid_argument("interpolation needs matching, non-empty nodes");
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t k = m - 1; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - level]);

  // Nested expansion of d0 + (x - x0)(d1 + (x - x1)(d2 + ...)).
  std::vector<T> poly{dd[m - 1]};
  for (std::size_t k = m - 1; k-- > 0;) {
    std::vector<T> next(poly.size() + 1, T(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= nodes[k] * poly[j];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

std::vector<double> charpoly_at(const Matrix& m, double sigma) {
  const auto c = faddeev_leverrier(m, sigma);
  return {c.begin(), c.end()};
}

std::vector<double> newton_interpolate(const std::vector<double>& nodes, const std::vector<double>& values) {
  return newton_interpolate_impl(nodes, values);
}

SigmaCharPoly coefficient_polynomials(const Matrix& m, Exec exec) {
  const std::size_t n = m.n();
  std::vector<Wide> nodes(n + 1);
  for (std::size_t k = 0; k <= n; ++k) nodes[k] = static_cast<Wide>(k);

  std::vector<std::vector<Wide>> samples(n + 1);
  if (exec == Exec::parallel) {
    const auto count = static_cast<long>(n + 1);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < count; ++k) samples[k] = faddeev_leverrier(m, static_cast<double>(k));
  } else {
    for (std::size_t k = 0; k <= n; ++k) samples[k] = faddeev_leverrier(m, static_cast<double>(k));
  }

  SigmaCharPoly out;
  out.n = n;
  out.p.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    // deg p_i <= n - i: the Newton series truncated after n - i terms is the
    // interpolant on the first n - i + 1 nodes.
    const std::size_t used = n - i + 1;
    std::vector<Wide> values(used);
    for (std::size_t k = 0; k < used; ++k) values[k] = samples[k][i];
    const auto wide = newton_interpolate_impl(std::vector<Wide>(nodes.begin(), nodes.begin() + used), values);
    out.p.push_back(RealPoly::with_noise_floor({wide.begin(), wide.end()}));
  }
  out.p.push_back(RealPoly{1.0});
  if (n > kConditioningLimit) {
    out.warnings.push_back("dimension " + std::to_string(n) + " exceeds " + std::to_string(kConditioningLimit) +
                           ": interpolation at integer nodes is ill-conditioned");
  }
  return out;
}

std::vector<double> SigmaCharPoly::at(double sigma) const {
  std::vector<double> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i].eval(sigma);
  return c;
}

std::vector<double> leading_diagonal_sums(const Matrix& m) {
  const std::size_t n = m.n();
  // e[k] after processing j values: elementary symmetric sum of degree k.
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = -m(j, j);
    for (std::size_t k = j + 1; k >= 1; --k) e[k] += v * e[k - 1];
  }
  return {e.begin() + 1, e.end()};
}

}  // namespace sigstab

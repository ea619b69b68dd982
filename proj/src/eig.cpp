#include "sigstab/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sigstab {

EigNoConvergence::EigNoConvergence(int iterations)
    : std::runtime_error("QR iteration did not converge within " + std::to_string(iterations) + " sweeps"),
      iterations_(iterations) {}

namespace {

using Work = std::vector<std::vector<double>>;

struct Active {
  int low;
  int high;
};

// Parlett-Reinsch balancing. Rows and columns that isolate an eigenvalue are
// first permuted to the bottom and top, leaving an active block low..high;
// that block is then scaled by powers of two (exact in floating point).
Active balance(Work& h) {
  const int n = static_cast<int>(h.size());
  auto exchange = [&](int a, int b) {
    if (a == b) return;
    std::swap(h[a], h[b]);
    for (auto& row : h) std::swap(row[a], row[b]);
  };

  int low = 0;
  int high = n - 1;
  for (bool found = true; found;) {
    found = false;
    for (int j = high; j >= 0; --j) {
      bool isolated = true;
      for (int i = 0; i <= high && isolated; ++i) isolated = (i == j || h[j][i] == 0.0);
      if (!isolated) continue;
      exchange(j, high);
      if (high == 0) return {0, 0};
      --high;
      found = true;
      break;
    }
  }
  for (bool found = true; found;) {
    found = false;
    for (int j = low; j <= high; ++j) {
      bool isolated = true;
      for (int i = low; i <= high && isolated; ++i) isolated = (i == j || h[i][j] == 0.0);
      if (!isolated) continue;
      exchange(j, low);
      ++low;
      found = true;
      break;
    }
  }

  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = low; i <= high; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (int j = low; j <= high; ++j) {
        if (j == i) continue;
        c += std::abs(h[j][i]);
        r += std::abs(h[i][j]);
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (int j = 0; j < n; ++j) h[i][j] *= g;
        for (int j = 0; j < n; ++j) h[j][i] *= f;
      }
    }
  }
  return {low, high};
}

// Householder reduction to upper Hessenberg form.
void hessenberg(Work& h, Active act) {
  const std::size_t n = h.size();
  if (act.high - act.low < 2) return;
  std::vector<double> ort(n, 0.0);
  const auto high = static_cast<std::size_t>(act.high);
  for (auto m = static_cast<std::size_t>(act.low) + 1; m + 1 <= high; ++m) {
    double scale = 0.0;
    for (std::size_t i = m; i <= high; ++i) scale += std::abs(h[i][m - 1]);
    if (scale == 0.0) continue;
    double hh = 0.0;
    for (std::size_t i = high + 1; i-- > m;) {
      ort[i] = h[i][m - 1] / scale;
      hh += ort[i] * ort[i];
    }
    double g = std::sqrt(hh);
    if (ort[m] > 0) g = -g;
    hh -= ort[m] * g;
    ort[m] -= g;
    for (std::size_t j = m; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = high + 1; i-- > m;) f += ort[i] * h[i][j];
      f /= hh;
      for (std::size_t i = m; i <= high; ++i) h[i][j] -= f * ort[i];
    }
    for (std::size_t i = 0; i <= high; ++i) {
      double f = 0.0;
      for (std::size_t j = high + 1; j-- > m;) f += ort[j] * h[i][j];
      f /= hh;
      for (std::size_t j = m; j <= high; ++j) h[i][j] -= f * ort[j];
    }
    h[m][m - 1] = scale * g;
    for (std::size_t i = m + 1; i <= high; ++i) h[i][m - 1] = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
// Entries outside the active block are eigenvalues isolated by balancing.
std::vector<std::complex<double>> hqr(Work& h, Active act) {
  const int nn = static_cast<int>(h.size());
  std::vector<double> wr(nn, 0.0);
  std::vector<double> wi(nn, 0.0);
  const double eps = std::numeric_limits<double>::epsilon();
  const int budget = 30 * nn;
  int total = 0;

  double norm = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = std::max(i - 1, 0); j < nn; ++j) norm += std::abs(h[i][j]);

  const int low = act.low;
  for (int i = 0; i < nn; ++i)
    if (i < low || i > act.high) wr[i] = h[i][i];

  int n = act.high;
  int iter = 0;
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, s = 0, z = 0, w, x, y;

  while (n >= low) {
    int l = n;
    while (l > low) {
      s = std::abs(h[l - 1][l - 1]) + std::abs(h[l][l]);
      if (s == 0.0) s = norm;
      if (std::abs(h[l][l - 1]) <= eps * s) break;
      --l;
    }

    if (l == n) {
      wr[n] = h[n][n] + exshift;
      wi[n] = 0.0;
      --n;
      iter = 0;
    } else if (l == n - 1) {
      w = h[n][n - 1] * h[n - 1][n];
      p = (h[n - 1][n - 1] - h[n][n]) / 2.0;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      x = h[n][n] + exshift;
      if (q >= 0) {
        z = (p >= 0) ? p + z : p - z;
        wr[n - 1] = x + z;
        wr[n] = (z != 0.0) ? x - w / z : wr[n - 1];
        wi[n - 1] = wi[n] = 0.0;
      } else {
        wr[n - 1] = wr[n] = x + p;
        wi[n - 1] = z;
        wi[n] = -z;
      }
      n -= 2;
      iter = 0;
    } else {
      if (++total > budget) throw EigNoConvergence(budget);
      x = h[n][n];
      y = h[n - 1][n - 1];
      w = h[n][n - 1] * h[n - 1][n];

      // Exceptional shifts break cycles.
      if (iter == 10) {
        exshift += x;
        for (int i = 0; i <= n; ++i) h[i][i] -= x;
        s = std::abs(h[n][n - 1]) + std::abs(h[n - 1][n - 2]);
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      if (iter == 30) {
        s = (y - x) / 2.0;
        s = s * s + w;
        if (s > 0) {
          s = std::sqrt(s);
          if (y < x) s = -s;
          s = x - w / ((y - x) / 2.0 + s);
          for (int i = 0; i <= n; ++i) h[i][i] -= s;
          exshift += s;
          x = y = w = 0.964;
        }
      }
      ++iter;

      // Two consecutive small subdiagonal elements.
      int m = n - 2;
      while (m >= l) {
        z = h[m][m];
        r = x - z;
        s = y - z;
        p = (r * s - w) / h[m + 1][m] + h[m][m + 1];
        q = h[m + 1][m + 1] - z - r - s;
        r = h[m + 2][m + 1];
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (std::abs(h[m][m - 1]) * (std::abs(q) + std::abs(r)) <
            eps * (std::abs(p) * (std::abs(h[m - 1][m - 1]) + std::abs(z) + std::abs(h[m + 1][m + 1]))))
          break;
        --m;
      }
      for (int i = m + 2; i <= n; ++i) {
        h[i][i - 2] = 0.0;
        if (i > m + 2) h[i][i - 3] = 0.0;
      }

      for (int k = m; k <= n - 1; ++k) {
        const bool notlast = (k != n - 1);
        if (k != m) {
          p = h[k][k - 1];
          q = h[k + 1][k - 1];
          r = notlast ? h[k + 2][k - 1] : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = std::sqrt(p * p + q * q + r * r);
        if (p < 0) s = -s;
        if (s == 0.0) continue;
        if (k != m) {
          h[k][k - 1] = -s * x;
        } else if (l != m) {
          h[k][k - 1] = -h[k][k - 1];
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= n; ++j) {
          p = h[k][j] + q * h[k + 1][j];
          if (notlast) {
            p += r * h[k + 2][j];
            h[k + 2][j] -= p * z;
          }
          h[k][j] -= p * x;
          h[k + 1][j] -= p * y;
        }
        for (int i = l; i <= std::min(n, k + 3); ++i) {
          p = x * h[i][k] + y * h[i][k + 1];
          if (notlast) {
            p += z * h[i][k + 2];
            h[i][k + 2] -= p * r;
          }
          h[i][k] -= p;
          h[i][k + 1] -= p * q;
        }
      }
    }
  }

  std::vector<std::complex<double>> out(nn);
  for (int i = 0; i < nn; ++i) out[i] = {wr[i], wi[i]};
  return out;
}

Spectrum summarize(std::vector<std::complex<double>> ev, double norm) {
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  Spectrum s;
  s.eigenvalues = std::move(ev);
  s.abscissa = -std::numeric_limits<double>::infinity();
  for (const auto& z : s.eigenvalues) s.abscissa = std::max(s.abscissa, z.real());
  s.imag_tol = kRealImagTol * std::max(1.0, norm);
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues[i].real() >= s.abscissa - kLeadingTieTol) {
      s.leading.push_back(i);
      if (std::abs(s.eigenvalues[i].imag()) <= s.imag_tol) {
        s.real_crossing = true;
      } else {
        s.complex_crossing = true;
      }
    }
  }
  return s;
}

}  // namespace

Spectrum eigenvalues(const Matrix& a) {
  if (!a.all_finite()) throw InvalidMatrix("matrix has non-finite entries");
  const Work rows = a.rows();
  Work h = rows;
  const Active act = balance(h);
  hessenberg(h, act);
  return summarize(hqr(h, act), a.norm_inf());
}

double spectral_abscissa(const Matrix& m, double sigma) { return eigenvalues(build_sigma_matrix(m, sigma)).abscissa; }

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
  if (deg <= 1) return {};
  const std::size_t d = deg - 1;
  const double lead = coeffs[d];
  Work c(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 1; i < d; ++i) c[i][i - 1] = 1.0;
  for (std::size_t i = 0; i < d; ++i) c[i][d - 1] = -coeffs[i] / lead;
  const Active act = balance(c);
  hessenberg(c, act);
  auto roots = hqr(c, act);
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  return roots;
}

}  // namespace sigstab

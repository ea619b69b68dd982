#include "sigstab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sigstab {

ZeroDiagonal::ZeroDiagonal(std::size_t position)
    : std::domain_error("zero diagonal entry at row " + std::to_string(position)),
      position_(position) {}

NonNegativeDiagonal::NonNegativeDiagonal(std::size_t position)
    : std::domain_error("non-negative diagonal entry at row " + std::to_string(position)),
      position_(position) {}

Matrix::Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
  if (n == 0) throw InvalidMatrix("matrix dimension must be positive");
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidMatrix("matrix has no rows");
  const std::size_t n = rows.size();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InvalidMatrix("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                          " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j])) {
        throw InvalidMatrix("non-finite entry at row " + std::to_string(i + 1) + ", column " +
                            std::to_string(j + 1));
      }
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (!std::isfinite(diag[i])) throw InvalidMatrix("non-finite diagonal entry");
    m(i, i) = diag[i];
  }
  return m;
}

std::vector<double> Matrix::diag() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

std::vector<std::vector<double>> Matrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

double Matrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.n();
  if (b.n() != n) throw InvalidMatrix("dimension mismatch in product");
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (b.n() != a.n()) throw InvalidMatrix("dimension mismatch in sum");
  Matrix c = a;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (b.n() != a.n()) throw InvalidMatrix("dimension mismatch in difference");
  Matrix c = a;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) c(i, j) -= b(i, j);
  return c;
}

Matrix build_sigma_matrix(const Matrix& m, double sigma) {
  if (!std::isfinite(sigma)) throw std::invalid_argument("sigma must be finite");
  Matrix out = m;
  for (std::size_t i = 0; i < m.n(); ++i) out(i, i) = sigma * m(i, i);
  return out;
}

Matrix build_mbar0(const Matrix& m) {
  const std::size_t n = m.n();
  for (std::size_t i = 0; i < n; ++i)
    if (m(i, i) == 0.0) throw ZeroDiagonal(i + 1);
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = m(i, i);
    for (std::size_t j = 0; j < n; ++j) out(i, j) = (i == j) ? 0.0 : -m(i, j) / d;
  }
  return out;
}

double gershgorin_sigma(const Matrix& m) {
  const std::size_t n = m.n();
  double sigma_g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = m(i, i);
    if (!(d < 0.0)) throw NonNegativeDiagonal(i + 1);
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) radius += std::abs(m(i, j));
    sigma_g = std::max(sigma_g, radius / -d);
  }
  return sigma_g;
}

bool has_negative_diagonal(const Matrix& m) noexcept {
  for (std::size_t i = 0; i < m.n(); ++i)
    if (!(m(i, i) < 0.0)) return false;
  return true;
}

double determinant(const Matrix& m) {
  const std::size_t n = m.n();
  Matrix lu = m;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    const double pivot = lu(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

}  // namespace sigstab

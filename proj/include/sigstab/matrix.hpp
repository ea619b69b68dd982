#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigstab {

/// Malformed matrix input: non-square, ragged, empty, or non-finite entries.
class InvalidMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A diagonal entry is zero, so D = diag(M) cannot be inverted.
class ZeroDiagonal : public std::domain_error {
 public:
  explicit ZeroDiagonal(std::size_t position);
  /// 1-based row of the offending entry.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A diagonal entry is >= 0, so no diagonal-dominance bound exists.
class NonNegativeDiagonal : public std::domain_error {
 public:
  explicit NonNegativeDiagonal(std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Dense square real matrix, row-major. All entries are finite.
class Matrix {
 public:
  /// n x n zero matrix; n must be positive.
  explicit Matrix(std::size_t n);

  /// Throws InvalidMatrix on ragged rows, an empty matrix or non-finite entries.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t n() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> diag() const;
  std::vector<std::vector<double>> rows() const;

  double trace() const noexcept;
  /// Maximum absolute row sum.
  double norm_inf() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// M with every diagonal entry m_ii replaced by sigma * m_ii. Off-diagonal
/// entries are copied bit-for-bit.
Matrix build_sigma_matrix(const Matrix& m, double sigma);

/// I - D^{-1} M, with D = diag(M). Throws ZeroDiagonal.
Matrix build_mbar0(const Matrix& m);

/// Smallest sigma_G such that for every sigma > sigma_G all row Gershgorin
/// discs of M_sigma lie in the open left half-plane:
///   sigma_G = max_i (sum_{j != i} |m_ij|) / (-m_ii).
/// Throws NonNegativeDiagonal when some m_ii >= 0.
double gershgorin_sigma(const Matrix& m);

/// True when every diagonal entry is strictly negative.
bool has_negative_diagonal(const Matrix& m) noexcept;

/// Determinant by LU with partial pivoting.
double determinant(const Matrix& m);

}  // namespace sigstab

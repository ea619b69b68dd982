#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sigstab/matrix.hpp"

namespace sigstab {

/// Malformed matrix file. row/column are 1-based; 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0);
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// n lines of n comma-separated decimals. Blank lines are ignored.
Matrix parse_matrix_csv(std::string_view text);

/// {"n": int, "entries": [[...], ...]}
Matrix parse_matrix_json(std::string_view text);

/// Dispatches on extension (.csv, .json); other extensions are sniffed
/// from the first non-blank character.
Matrix load_matrix(const std::filesystem::path& path);

/// JSON matrix document; doubles round-trip bit for bit.
std::string matrix_to_json(const Matrix& m);

/// Writes to a temporary sibling and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace sigstab

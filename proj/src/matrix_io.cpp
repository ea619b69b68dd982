#include "sigstab/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace sigstab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string where(std::size_t row, std::size_t column) {
  std::string s = "row " + std::to_string(row);
  if (column > 0) s += ", column " + std::to_string(column);
  return s;
}

double parse_number(std::string_view field, std::size_t row, std::size_t column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(where(row, column) + ": not a number: '" + std::string(field) + "'", row, column);
  }
  if (!std::isfinite(v)) throw ParseError(where(row, column) + ": non-finite value", row, column);
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t column)
    : std::runtime_error(what), row_(row), column_(column) {}

Matrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = (eol == std::string_view::npos) ? std::string_view{} : text.substr(eol + 1);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t row = rows.size() + 1;
    std::vector<double> values;
    std::size_t column = 0;
    while (true) {
      const auto comma = line.find(',');
      values.push_back(parse_number(line.substr(0, comma), row, ++column));
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("empty matrix file");
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ParseError(where(i + 1, 0) + ": expected " + std::to_string(n) + " values, found " +
                           std::to_string(rows[i].size()),
                       i + 1);
    }
  }
  return Matrix::from_rows(rows);
}

Matrix parse_matrix_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries")) throw ParseError("matrix JSON needs an \"entries\" array");
  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.empty()) throw ParseError("\"entries\" must be a non-empty array of rows");
  const std::size_t n = entries.size();
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(n))
      throw ParseError("\"n\" does not match the number of rows");
  }
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = entries[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError(where(i + 1, 0) + ": expected " + std::to_string(n) + " values, found " +
                           std::to_string(row.is_array() ? row.size() : 0),
                       i + 1);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!row[j].is_number()) throw ParseError(where(i + 1, j + 1) + ": not a number", i + 1, j + 1);
      rows[i].push_back(row[j].get<double>());
    }
  }
  return Matrix::from_rows(rows);
}

Matrix load_matrix(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw std::runtime_error("file not found: '" + path.string() + "'");
  const std::string text = read_file(path);
  const std::string ext = path.extension().string();
  if (ext == ".csv") return parse_matrix_csv(text);
  if (ext == ".json") return parse_matrix_json(text);
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_matrix_json(text);
  return parse_matrix_csv(text);
}

std::string matrix_to_json(const Matrix& m) {
  nlohmann::json doc;
  doc["n"] = m.n();
  doc["entries"] = m.rows();
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sigstab

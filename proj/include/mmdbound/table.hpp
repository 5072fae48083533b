#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mmdb {

/// Small CSV table with a header row. Cells are stored as text so that the
/// serialised form is exactly what was computed.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  /// Numeric column; empty cells and "inf" become +inf.
  std::vector<double> numeric(const std::string& name) const;

  std::string to_csv() const;
  static Table from_csv(const std::string& text);
};

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace mmdb

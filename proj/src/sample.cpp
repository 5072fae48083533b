#include "mmdbound/sample.hpp"

#include "mmdbound/errors.hpp"
#include "mmdbound/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace mmdb {

Sample::Sample(RowMatrix data) : data_(std::move(data)) {
  require(data_.rows() >= 1, "sample must have at least one row");
  require(data_.cols() >= 1, "sample must have at least one column");
  require(data_.allFinite(), "sample entries must be finite");
}

Sample Sample::repeated(std::span<const double> point, Eigen::Index n) {
  RowMatrix m(n, static_cast<Eigen::Index>(point.size()));
  for (Eigen::Index t = 0; t < n; ++t)
    for (Eigen::Index i = 0; i < m.cols(); ++i) m(t, i) = point[static_cast<std::size_t>(i)];
  return Sample(std::move(m));
}

Vector Sample::mean() const { return data_.colwise().mean().transpose(); }

Sample Sample::with_row(Eigen::Index t, std::span<const double> point) const {
  require(static_cast<Eigen::Index>(point.size()) == dim(), "replacement point has wrong dimension");
  RowMatrix m = data_;
  for (Eigen::Index i = 0; i < dim(); ++i) m(t, i) = point[static_cast<std::size_t>(i)];
  return Sample(std::move(m));
}

namespace {

double parse_cell(std::string_view cell, std::size_t line_no) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
    cell.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw SchemaError("line " + std::to_string(line_no) + ": not a number: '" + std::string(cell) + "'");
  return value;
}

}  // namespace

RowMatrix parse_numeric_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      auto comma = rest.find(',');
      row.push_back(parse_cell(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw SchemaError("line " + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw SchemaError("empty CSV");
  RowMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t i = 0; i < rows[t].size(); ++i)
      m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) = rows[t][i];
  return m;
}

Sample load_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Sample(parse_numeric_csv(in));
}

void save_sample_csv(const Sample& sample, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (Eigen::Index t = 0; t < sample.size(); ++t) {
    for (Eigen::Index i = 0; i < sample.dim(); ++i) {
      if (i) out << ',';
      out << format_roundtrip(sample.matrix()(t, i));
    }
    out << '\n';
  }
}

}  // namespace mmdb

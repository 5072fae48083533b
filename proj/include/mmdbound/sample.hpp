#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <span>

namespace mmdb {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// n observations in R^d, one per row. Entries are finite and n, d >= 1.
class Sample {
 public:
  explicit Sample(RowMatrix data);

  /// Sample of n copies of one point.
  static Sample repeated(std::span<const double> point, Eigen::Index n);

  Eigen::Index size() const { return data_.rows(); }
  Eigen::Index dim() const { return data_.cols(); }

  std::span<const double> row(Eigen::Index t) const {
    return {data_.data() + t * data_.cols(), static_cast<std::size_t>(data_.cols())};
  }

  const RowMatrix& matrix() const { return data_; }
  Vector mean() const;

  /// Copy with row t replaced by `point`.
  Sample with_row(Eigen::Index t, std::span<const double> point) const;

 private:
  RowMatrix data_;
};

/// Headerless CSV, one observation per row.
Sample load_sample_csv(const std::filesystem::path& path);
void save_sample_csv(const Sample& sample, const std::filesystem::path& path);

/// Parses a headerless numeric CSV into a dense matrix (all rows equally long).
RowMatrix parse_numeric_csv(std::istream& in);

}  // namespace mmdb

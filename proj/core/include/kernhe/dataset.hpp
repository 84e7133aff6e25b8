#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kernhe {

// n points of dimension d, row-major, with optional per-point labels.
struct Dataset {
  size_t n = 0;
  size_t d = 0;
  std::vector<double> x;
  std::optional<std::vector<double>> y;

  double at(size_t i, size_t j) const { return x[i * d + j]; }
  std::vector<double> row(size_t i) const;
  void validate() const;

  static Dataset from_rows(const std::vector<std::vector<double>>& rows);
};

// Comma-separated text, one point per row. A non-numeric first row is taken as
// a header. With label_column the last column becomes y.
Dataset parse_csv(std::istream& in, bool label_column, const std::string& source = "<stream>");
Dataset ingest_dataset(const std::string& path, bool label_column);

// Seeded, uniform in [-1, 1]^d. Labels, when classes > 0, are uniform in
// 1..classes.
Dataset synthetic_dataset(size_t n, size_t d, uint64_t seed, int classes = 0);

// FNV-1a over the shape and the exact bit patterns of the values.
uint64_t content_hash(const Dataset& data);

}  // namespace kernhe

#include "kernhe/dataset.hpp"

#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "kernhe/errors.hpp"

namespace kernhe {

std::vector<double> Dataset::row(size_t i) const {
  return std::vector<double>(x.begin() + i * d, x.begin() + (i + 1) * d);
}

void Dataset::validate() const {
  if (n == 0 || d == 0) throw ShapeError("dataset must have n >= 1 and d >= 1");
  if (x.size() != n * d) throw ShapeError("dataset values do not match n x d");
  if (y && y->size() != n) throw ShapeError("label count does not match n");
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
  Dataset data;
  data.n = rows.size();
  data.d = rows.empty() ? 0 : rows[0].size();
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != data.d) {
      throw ShapeError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " values, expected " + std::to_string(data.d));
    }
    data.x.insert(data.x.end(), rows[i].begin(), rows[i].end());
  }
  data.validate();
  return data;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Dataset parse_csv(std::istream& in, bool label_column, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t line_no = 0;
  size_t width = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    std::vector<double> values;
    values.reserve(cells.size());
    bool numeric = true;
    for (const auto& c : cells) {
      double v = 0;
      if (!parse_number(c, v)) {
        numeric = false;
        break;
      }
      values.push_back(v);
    }
    if (!numeric) {
      if (first_content) {
        first_content = false;
        width = cells.size();
        continue;  // header
      }
      throw ParseError(source + ":" + std::to_string(line_no) + ": non-numeric cell");
    }
    if (width != 0 && values.size() != width) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " columns, found " + std::to_string(values.size()));
    }
    width = values.size();
    first_content = false;
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError(source + ": no data rows");
  if (label_column && width < 2) {
    throw ParseError(source + ": label column requested but rows have fewer than 2 columns");
  }

  Dataset data;
  data.n = rows.size();
  data.d = label_column ? width - 1 : width;
  if (label_column) data.y.emplace();
  for (const auto& r : rows) {
    data.x.insert(data.x.end(), r.begin(), r.begin() + data.d);
    if (label_column) data.y->push_back(r.back());
  }
  data.validate();
  return data;
}

Dataset ingest_dataset(const std::string& path, bool label_column) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return parse_csv(in, label_column, path);
}

Dataset synthetic_dataset(size_t n, size_t d, uint64_t seed, int classes) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Dataset data;
  data.n = n;
  data.d = d;
  data.x.resize(n * d);
  for (auto& v : data.x) v = unit(rng);
  if (classes > 0) {
    std::uniform_int_distribution<int> cls(1, classes);
    data.y.emplace(n);
    for (auto& v : *data.y) v = cls(rng);
  }
  data.validate();
  return data;
}

uint64_t content_hash(const Dataset& data) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  mix(&data.n, sizeof data.n);
  mix(&data.d, sizeof data.d);
  for (double v : data.x) {
    if (v == 0.0) v = 0.0;  // fold -0.0
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    mix(&bits, sizeof bits);
  }
  return h;
}

}  // namespace kernhe

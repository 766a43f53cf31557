#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace stovex {

// Shortest round-trip text with at most 17 significant digits, '.' decimal.
std::string format_real(double v);

struct Provenance {
  double b1 = 0.0;
  double b2 = 0.0;
  std::uint64_t seed = 0;
};

using CsvCell = std::variant<std::int64_t, double, std::string>;

// Columns as given, followed by b1, b2, seed on every row.
class CsvTable {
 public:
  CsvTable(std::vector<std::string> columns, Provenance prov);

  void add_row(std::vector<CsvCell> cells);
  std::size_t rows() const noexcept { return rows_.size(); }

  void write(std::ostream& os) const;
  // Throws IoError when the file cannot be written.
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  Provenance prov_;
  std::vector<std::vector<CsvCell>> rows_;
};

}  // namespace stovex

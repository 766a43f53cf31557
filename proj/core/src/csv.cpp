#include "stovex/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>

#include "stovex/errors.hpp"

namespace stovex {

std::string format_real(double v) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns, Provenance prov)
    : columns_(std::move(columns)), prov_(prov) {}

void CsvTable::add_row(std::vector<CsvCell> cells) {
  if (cells.size() != columns_.size()) fail(Errc::InvalidArgument, "CSV row width mismatch");
  rows_.push_back(std::move(cells));
}

namespace {

struct CellText {
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_real(v); }
  std::string operator()(const std::string& v) const { return v; }
};

}  // namespace

void CsvTable::write(std::ostream& os) const {
  for (const auto& c : columns_) os << c << ',';
  os << "b1,b2,seed\n";
  const std::string tail =
      format_real(prov_.b1) + ',' + format_real(prov_.b2) + ',' + std::to_string(prov_.seed);
  for (const auto& row : rows_) {
    for (const auto& cell : row) os << std::visit(CellText{}, cell) << ',';
    os << tail << '\n';
  }
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open " + path);
  write(out);
  out.flush();
  if (!out) fail(Errc::IoError, "write failed for " + path);
}

}  // namespace stovex

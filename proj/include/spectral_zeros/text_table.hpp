#pragma once

// One-real-per-line text files ('#' comment lines and blank lines ignored).

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_zeros/errors.hpp"

namespace spz {

struct TableRow {
  double value;
  std::size_t line;  // 1-based source line
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

inline std::vector<TableRow> read_real_column(std::istream& in, const std::string& name = "<stream>") {
  std::vector<TableRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (*begin == '+') ++begin;  // from_chars rejects a leading '+'
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      throw ParseError(name + ":" + std::to_string(number) + ": expected one real number, got '" +
                           std::string(text) + "'",
                       number);
    }
    rows.push_back({value, number});
  }
  return rows;
}

inline std::vector<TableRow> read_real_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return read_real_column(in, path);
}

}  // namespace spz

// Internal helpers shared by the file readers and writers.
#ifndef SELPREF_SRC_TEXT_HPP
#define SELPREF_SRC_TEXT_HPP

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selpref::text {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

// Comment lines start with '#'; blank lines carry nothing either.
inline bool is_skippable(std::string_view line) {
  return line.empty() || line.front() == '#';
}

inline bool has_space(std::string_view token) {
  for (char ch : token) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') return true;
  }
  return false;
}

inline std::optional<int> parse_positive_int(std::string_view token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value <= 0) return std::nullopt;
  return value;
}

inline std::optional<double> parse_double(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

// 17 significant digits: parses back to the identical double.
inline std::string format_score(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

inline std::string format_fixed4(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

}  // namespace selpref::text

#endif

#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/error.hpp"

namespace ppl {

// Shortest decimal form that parses back to the identical double; file
// round-trips are required to be bit-exact.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double out = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    fail(errc::parse_error, "bad float '" + std::string(s) + "'");
  return out;
}

inline std::int64_t parse_int(std::string_view s) {
  std::int64_t out = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    fail(errc::parse_error, "bad integer '" + std::string(s) + "'");
  return out;
}

inline std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    fail(errc::parse_error, "bad unsigned integer '" + std::string(s) + "'");
  return out;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace ppl

#include "core/error.hpp"

namespace ppl {

int status_class(errc c) {
  switch (c) {
    case errc::invalid_argument:
    case errc::empty_set:
    case errc::full_set:
    case errc::out_of_range:
    case errc::cap_exceeded:
    case errc::unsupported:
    case errc::bad_weights:
      return 1;
    case errc::bad_magic:
    case errc::truncated_file:
    case errc::count_mismatch:
    case errc::dimension_mismatch:
    case errc::not_complementary:
    case errc::missing_labels:
    case errc::io_error:
    case errc::parse_error:
      return 2;
    case errc::verification_failed:
      return 3;
    case errc::degenerate_denominator:
    case errc::normalization_failure:
    case errc::non_finite:
      return 4;
  }
  return 1;
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::empty_set: return "empty_set";
    case errc::full_set: return "full_set";
    case errc::out_of_range: return "out_of_range";
    case errc::cap_exceeded: return "cap_exceeded";
    case errc::unsupported: return "unsupported";
    case errc::bad_weights: return "bad_weights";
    case errc::bad_magic: return "bad_magic";
    case errc::truncated_file: return "truncated_file";
    case errc::count_mismatch: return "count_mismatch";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::not_complementary: return "not_complementary";
    case errc::missing_labels: return "missing_labels";
    case errc::io_error: return "io_error";
    case errc::parse_error: return "parse_error";
    case errc::degenerate_denominator: return "degenerate_denominator";
    case errc::normalization_failure: return "normalization_failure";
    case errc::non_finite: return "non_finite";
    case errc::verification_failed: return "verification_failed";
  }
  return "unknown";
}

void fail(errc code, const std::string& message) {
  throw Error(code, std::string(errc_name(code)) + ": " + message);
}

}  // namespace ppl

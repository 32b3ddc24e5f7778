#pragma once

#include <stdexcept>
#include <string>

namespace ppl {

// Stable error taxonomy. status_class() maps each code onto the process exit
// contract shared by the CLI and the C API: 1 usage, 2 data/format,
// 3 verification failure, 4 numeric failure.
enum class errc {
  invalid_argument,
  empty_set,
  full_set,
  out_of_range,
  cap_exceeded,
  unsupported,
  bad_weights,
  bad_magic,
  truncated_file,
  count_mismatch,
  dimension_mismatch,
  not_complementary,
  missing_labels,
  io_error,
  parse_error,
  degenerate_denominator,
  normalization_failure,
  non_finite,
  verification_failed,
};

int status_class(errc c);
const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  errc code() const { return code_; }
  int status() const { return status_class(code_); }

 private:
  errc code_;
};

[[noreturn]] void fail(errc code, const std::string& message);

}  // namespace ppl

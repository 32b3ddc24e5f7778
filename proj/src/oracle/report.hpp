#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ppl::oracle {

enum class CheckStatus { pass, fail, info };

struct CheckResult {
  std::string name;        // unique, stable across runs
  std::string claim;       // what identity or property the check certifies
  CheckStatus status = CheckStatus::pass;
  double max_deviation = 0.0;
  std::string witness;     // populated on failure: the cell that broke
  std::string note;        // free-form commentary (info entries, caveats)
};

class VerificationReport {
 public:
  void add(CheckResult result);
  const std::vector<CheckResult>& checks() const { return checks_; }

  // Info entries never fail the suite.
  bool all_passed() const;
  std::size_t failures() const;

  nlohmann::json to_json() const;
  std::string render_table() const;

  void set_config(nlohmann::json config) { config_ = std::move(config); }

 private:
  std::vector<CheckResult> checks_;
  nlohmann::json config_ = nlohmann::json::object();
};

}  // namespace ppl::oracle

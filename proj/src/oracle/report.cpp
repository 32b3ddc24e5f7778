#include "oracle/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "core/error.hpp"

namespace ppl::oracle {

namespace {

const char* status_text(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::info: return "INFO";
  }
  return "?";
}

}  // namespace

void VerificationReport::add(CheckResult result) {
  for (const auto& existing : checks_)
    if (existing.name == result.name)
      fail(errc::invalid_argument, "duplicate check name '" + result.name + "'");
  checks_.push_back(std::move(result));
}

bool VerificationReport::all_passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(),
                    [](const CheckResult& c) { return c.status == CheckStatus::fail; }));
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json out;
  out["config"] = config_;
  out["all_passed"] = all_passed();
  out["failures"] = failures();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks_) {
    nlohmann::json entry;
    entry["name"] = c.name;
    entry["claim"] = c.claim;
    entry["status"] = status_text(c.status);
    entry["max_deviation"] = c.max_deviation;
    if (!c.witness.empty()) entry["witness"] = c.witness;
    if (!c.note.empty()) entry["note"] = c.note;
    list.push_back(std::move(entry));
  }
  out["checks"] = std::move(list);
  return out;
}

std::string VerificationReport::render_table() const {
  std::size_t name_width = 4;
  for (const auto& c : checks_) name_width = std::max(name_width, c.name.size());

  std::ostringstream out;
  out << std::left << std::setw(6) << "status" << std::setw(static_cast<int>(name_width) + 2)
      << "check" << std::setw(13) << "deviation" << "detail\n";
  for (const auto& c : checks_) {
    out << std::left << std::setw(6) << status_text(c.status)
        << std::setw(static_cast<int>(name_width) + 2) << c.name;
    std::ostringstream dev;
    dev << std::scientific << std::setprecision(2) << c.max_deviation;
    out << std::setw(13) << dev.str();
    if (c.status == CheckStatus::fail && !c.witness.empty())
      out << "witness: " << c.witness;
    else if (!c.note.empty())
      out << c.note;
    else
      out << c.claim;
    out << '\n';
  }
  out << (all_passed() ? "all checks passed" : std::to_string(failures()) + " check(s) failed")
      << '\n';
  return out.str();
}

}  // namespace ppl::oracle

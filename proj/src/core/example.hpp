#pragma once

#include <optional>
#include <vector>

#include "core/candidate_set.hpp"

namespace ppl {

// One training instance. The true label is optional: synthetic and evaluation
// copies keep it, honest weakly-supervised exports drop it. When present it
// must be a member of the candidate set.
struct Example {
  std::vector<double> features;
  std::optional<int> true_label;
  CandidateSet candidates;

  Example(std::vector<double> x, std::optional<int> label, CandidateSet s)
      : features(std::move(x)), true_label(label), candidates(std::move(s)) {
    if (true_label && !candidates.contains(*true_label))
      fail(errc::invalid_argument, "true label " + std::to_string(*true_label) +
                                       " not in candidate set " + candidates.to_string());
  }
};

}  // namespace ppl

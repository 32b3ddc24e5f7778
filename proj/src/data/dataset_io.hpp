#pragma once

#include <string>

#include "core/dataset.hpp"

namespace ppl {

// Partial-label dataset file: a JSON header line (K, d, n, feature payload
// mode, provenance) followed by one CSV record per example:
//
//   index,candidate_mask,true_label,x_1,...,x_d      (inline features)
//   index,candidate_mask,true_label                  (features by reference)
//
// candidate_mask is the decimal K-bit mask with bit b (1-indexed) set iff
// class b is a candidate. true_label is empty when stripped. In reference
// mode the header names the source IDX image file and row order must match
// it, which save() enforces.
enum class FeaturePayload { automatic, inline_csv, idx_ref };

void save_partial_label_file(const Dataset& data, const std::string& path,
                             bool strip_true_labels = false,
                             FeaturePayload mode = FeaturePayload::automatic);

Dataset load_partial_label_file(const std::string& path);

// Labeled CSV: header "K,d,n", then one "y,x_1,...,x_d" row per example.
void save_labeled_csv(const Dataset& data, const std::string& path);
Dataset load_labeled_csv(const std::string& path);

}  // namespace ppl

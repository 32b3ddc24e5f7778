#pragma once

#include <string>

#include "core/dataset.hpp"

namespace ppl {

// Reads a big-endian IDX image/label file pair into a fully labeled dataset:
// features are the flattened pixels scaled to [0,1] (byte / 255), labels are
// shifted from 0..K-1 on disk to 1..K in memory, and every candidate set is
// the singleton true label.
Dataset load_idx_dataset(const std::string& images_path, const std::string& labels_path);

}  // namespace ppl

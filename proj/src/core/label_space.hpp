#pragma once

#include "core/error.hpp"

namespace ppl {

// Class identifiers are 1..K everywhere outside bit-level storage.
// Multi-class only: K >= 3, and K <= 64 so a candidate set fits one word.
class LabelSpace {
 public:
  static constexpr int kMaxClasses = 64;

  explicit LabelSpace(int num_classes) : k_(num_classes) {
    if (k_ < 3) fail(errc::invalid_argument, "need at least 3 classes, got " + std::to_string(k_));
    if (k_ > kMaxClasses)
      fail(errc::invalid_argument, "at most 64 classes supported, got " + std::to_string(k_));
  }

  int num_classes() const { return k_; }
  bool contains(int label) const { return label >= 1 && label <= k_; }

  std::uint64_t full_mask() const {
    return k_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k_) - 1;
  }

  friend bool operator==(const LabelSpace& a, const LabelSpace& b) { return a.k_ == b.k_; }

 private:
  int k_;
};

}  // namespace ppl

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/label_space.hpp"

namespace ppl {

// A partial label: a non-empty, proper subset of the K classes. Class c is a
// member iff bit (c-1) of the mask is set, so the decimal mask value written
// to files equals the internal representation.
class CandidateSet {
 public:
  CandidateSet() = default;

  static CandidateSet from_mask(std::uint64_t mask, const LabelSpace& space) {
    if (mask == 0) fail(errc::empty_set, "candidate set must be non-empty");
    if ((mask & ~space.full_mask()) != 0)
      fail(errc::out_of_range, "mask has bits outside 1.." + std::to_string(space.num_classes()));
    if (mask == space.full_mask())
      fail(errc::full_set, "candidate set must be a proper subset of the label space");
    return CandidateSet(mask, space.num_classes());
  }

  static CandidateSet from_members(const std::vector<int>& members, const LabelSpace& space) {
    if (members.empty()) fail(errc::empty_set, "candidate set must be non-empty");
    std::uint64_t mask = 0;
    for (int c : members) {
      if (!space.contains(c))
        fail(errc::out_of_range,
             "class " + std::to_string(c) + " outside 1.." + std::to_string(space.num_classes()));
      mask |= std::uint64_t{1} << (c - 1);
    }
    return from_mask(mask, space);
  }

  static CandidateSet singleton(int label, const LabelSpace& space) {
    return from_members({label}, space);
  }

  std::uint64_t mask() const { return mask_; }
  int num_classes() const { return k_; }
  int size() const { return std::popcount(mask_); }
  bool contains(int label) const {
    return label >= 1 && label <= k_ && (mask_ >> (label - 1)) & 1;
  }

  CandidateSet complement() const {
    const std::uint64_t full = k_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k_) - 1;
    return CandidateSet(full & ~mask_, k_);
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    std::uint64_t m = mask_;
    while (m != 0) {
      const int bit = std::countr_zero(m);
      out.push_back(bit + 1);
      m &= m - 1;
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    for (int c : members()) {
      if (s.size() > 1) s += ',';
      s += std::to_string(c);
    }
    return s + "}";
  }

  friend bool operator==(const CandidateSet& a, const CandidateSet& b) {
    return a.mask_ == b.mask_ && a.k_ == b.k_;
  }

 private:
  CandidateSet(std::uint64_t mask, int k) : mask_(mask), k_(k) {}

  std::uint64_t mask_ = 0;
  int k_ = 0;
};

// Iterates every valid partial label for a label space, optionally restricted
// to sets containing one class. Masks 1 .. 2^K-2 are exactly the non-empty
// proper subsets, so enumeration is a filtered counter walk.
class CandidateSetRange {
 public:
  static constexpr int kDefaultEnumerationCap = 20;

  explicit CandidateSetRange(const LabelSpace& space, int containing = 0,
                             int cap = kDefaultEnumerationCap)
      : k_(space.num_classes()), containing_(containing) {
    if (k_ > cap)
      fail(errc::cap_exceeded, "enumeration of 2^" + std::to_string(k_) +
                                   " candidate sets exceeds cap K<=" + std::to_string(cap));
    if (containing_ != 0 && !space.contains(containing_))
      fail(errc::out_of_range, "filter class " + std::to_string(containing_) + " out of range");
  }

  class iterator {
   public:
    iterator(std::uint64_t mask, std::uint64_t last, std::uint64_t need, int k)
        : mask_(mask), last_(last), need_(need), k_(k) {
      advance_to_valid();
    }

    CandidateSet operator*() const { return CandidateSet::from_mask(mask_, LabelSpace(k_)); }
    iterator& operator++() {
      ++mask_;
      advance_to_valid();
      return *this;
    }
    bool operator!=(const iterator& o) const { return mask_ != o.mask_; }

   private:
    void advance_to_valid() {
      while (mask_ <= last_ && (mask_ & need_) != need_) ++mask_;
      if (mask_ > last_) mask_ = last_ + 1;
    }

    std::uint64_t mask_;
    std::uint64_t last_;
    std::uint64_t need_;
    int k_;
  };

  iterator begin() const {
    const std::uint64_t last = (std::uint64_t{1} << k_) - 2;
    const std::uint64_t need = containing_ ? std::uint64_t{1} << (containing_ - 1) : 0;
    return iterator(1, last, need, k_);
  }
  iterator end() const {
    const std::uint64_t last = (std::uint64_t{1} << k_) - 2;
    return iterator(last + 1, last, 0, k_);
  }

  std::vector<CandidateSet> to_vector() const {
    std::vector<CandidateSet> out;
    for (const CandidateSet& s : *this) out.push_back(s);
    return out;
  }

 private:
  int k_;
  int containing_;
};

}  // namespace ppl

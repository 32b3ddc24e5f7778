#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppl {

// Compensated (Kahan) accumulator; exact-identity checks sum thousands of
// terms and need the extra guard digits.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Finite distribution over integer-indexed support points.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<std::pair<int, double>> support, double sum_tolerance = 1e-12)
      : support_(std::move(support)) {
    KahanSum total;
    for (const auto& [point, p] : support_) {
      if (p < 0.0)
        fail(errc::invalid_argument, "negative probability at point " + std::to_string(point));
      total.add(p);
    }
    if (std::abs(total.value() - 1.0) > sum_tolerance)
      fail(errc::normalization_failure,
           "probabilities sum to " + std::to_string(total.value()) + ", expected 1");
  }

  const std::vector<std::pair<int, double>>& support() const { return support_; }

  double probability_of(int point) const {
    for (const auto& [q, p] : support_)
      if (q == point) return p;
    return 0.0;
  }

  double mean() const {
    KahanSum m;
    for (const auto& [point, p] : support_) m.add(point * p);
    return m.value();
  }

  // Inverse-CDF draw over the support order.
  int sample(Rng& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    for (const auto& [point, p] : support_) {
      acc += p;
      if (u < acc) return point;
    }
    return support_.back().first;
  }

 private:
  std::vector<std::pair<int, double>> support_;
};

}  // namespace ppl

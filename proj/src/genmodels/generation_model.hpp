#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/candidate_set.hpp"
#include "core/discrete_distribution.hpp"
#include "core/rng.hpp"
#include "json.hpp"

namespace ppl {

// Exact binomial coefficient; fits the label-space cap (K <= 64) without
// overflow thanks to the 128-bit intermediate.
std::uint64_t binomial(int n, int k);

// Number of partial labels containing a fixed class: 2^(K-1) - 1.
std::uint64_t candidate_sets_containing_one_class(int num_classes);

// Complementary-set size law with geometric decay: weight alpha^(k-1) on
// size k in 1..K-1, normalized. Smaller alpha pushes mass toward small
// complementary sets, i.e. larger (more ambiguous) candidate sets.
class SkewedSizeDistribution {
 public:
  SkewedSizeDistribution(double alpha, int num_classes);

  double alpha() const { return alpha_; }
  int num_classes() const { return k_; }
  const std::vector<double>& probabilities() const { return qbar_; }  // index 0 = size 1

  DiscreteDistribution distribution() const;

 private:
  double alpha_;
  int k_;
  std::vector<double> qbar_;
};

enum class GenerationKind { cl, mcl, pcpl, custom_proper };

const char* kind_name(GenerationKind k);
GenerationKind kind_from_name(const std::string& name);

// A conditional kernel p(s|x,y) of the factorized form C(x,s) * 1{y in s}.
//
//   cl    - the complementary-label kernel: s is the complement of one class
//           drawn uniformly from the K-1 wrong classes, so C = 1/(K-1) on
//           sets of size K-1.
//   mcl   - a complementary-set size is drawn from qbar, then the set itself
//           uniformly among that size; C = Q_{|s|} / binom(K-1, |s|-1).
//   pcpl  - s is uniform over all sets containing the true label;
//           C = 1 / (2^(K-1) - 1).
//   custom_proper - caller-supplied nonnegative weight(x, s), normalized over
//           {s : y in s}. Only usable under the enumeration cap. The weight
//           must give a y-independent normalizer or the kernel is not a valid
//           factorized one; oracle fixtures check this where it matters.
class GenerationModel {
 public:
  using WeightFn = std::function<double(const std::vector<double>& x, const CandidateSet& s)>;

  static GenerationModel complementary(const LabelSpace& space);
  static GenerationModel multi_complementary(const LabelSpace& space,
                                             std::vector<double> qbar_over_sizes);
  static GenerationModel skewed(const LabelSpace& space, double alpha);
  static GenerationModel uniform_over_sets(const LabelSpace& space);
  static GenerationModel custom(const LabelSpace& space, WeightFn weight);

  GenerationKind kind() const { return kind_; }
  const LabelSpace& label_space() const { return space_; }
  int num_classes() const { return space_.num_classes(); }
  std::optional<double> alpha() const { return alpha_; }

  // p(s | x, y); exactly zero when y is not a member of s.
  double conditional_probability(const std::vector<double>& x, int y, const CandidateSet& s) const;

  CandidateSet sample(const std::vector<double>& x, int y, Rng& rng) const;

  // Law of |s| in 1..K-1, exact. Only kinds whose size law is x-independent.
  DiscreteDistribution size_distribution() const;

  double expected_candidate_set_size() const { return size_distribution().mean(); }

  // {kind, K, alpha?, qbar?, seed}; embedded verbatim into dataset provenance.
  nlohmann::json descriptor(std::uint64_t seed = 0) const;
  static GenerationModel from_descriptor(const nlohmann::json& descriptor);

 private:
  GenerationModel(GenerationKind kind, const LabelSpace& space)
      : kind_(kind), space_(space) {}

  double mcl_conditional(const CandidateSet& s) const;

  GenerationKind kind_;
  LabelSpace space_;
  std::optional<double> alpha_;           // recorded for skewed descriptors
  std::vector<double> qbar_;              // mcl: P(|complement| = k), index 0 = size 1
  WeightFn weight_;                       // custom_proper
};

}  // namespace ppl

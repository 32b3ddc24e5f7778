#include "genmodels/generation_model.hpp"

#include <algorithm>
#include <cmath>

namespace ppl {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t candidate_sets_containing_one_class(int num_classes) {
  return (std::uint64_t{1} << (num_classes - 1)) - 1;
}

SkewedSizeDistribution::SkewedSizeDistribution(double alpha, int num_classes)
    : alpha_(alpha), k_(num_classes) {
  if (!(alpha > 0.0) || alpha > 1.0)
    fail(errc::invalid_argument, "alpha must lie in (0,1], got " + std::to_string(alpha));
  if (k_ < 3) fail(errc::invalid_argument, "need at least 3 classes");
  // Geometric weights built by repeated multiplication so the ratio between
  // consecutive entries is exact in floating point.
  qbar_.resize(static_cast<std::size_t>(k_ - 1));
  double w = 1.0;
  KahanSum total;
  for (auto& q : qbar_) {
    q = w;
    total.add(w);
    w *= alpha;
  }
  for (auto& q : qbar_) q /= total.value();
}

DiscreteDistribution SkewedSizeDistribution::distribution() const {
  std::vector<std::pair<int, double>> support;
  for (int size = 1; size <= k_ - 1; ++size)
    support.emplace_back(size, qbar_[static_cast<std::size_t>(size - 1)]);
  return DiscreteDistribution(std::move(support));
}

const char* kind_name(GenerationKind k) {
  switch (k) {
    case GenerationKind::cl: return "cl";
    case GenerationKind::mcl: return "mcl";
    case GenerationKind::pcpl: return "pcpl";
    case GenerationKind::custom_proper: return "custom";
  }
  return "unknown";
}

GenerationKind kind_from_name(const std::string& name) {
  if (name == "cl") return GenerationKind::cl;
  if (name == "mcl") return GenerationKind::mcl;
  if (name == "pcpl") return GenerationKind::pcpl;
  if (name == "custom") return GenerationKind::custom_proper;
  fail(errc::invalid_argument, "unknown generation kind '" + name + "'");
}

GenerationModel GenerationModel::complementary(const LabelSpace& space) {
  return GenerationModel(GenerationKind::cl, space);
}

GenerationModel GenerationModel::multi_complementary(const LabelSpace& space,
                                                     std::vector<double> qbar_over_sizes) {
  if (static_cast<int>(qbar_over_sizes.size()) != space.num_classes() - 1)
    fail(errc::invalid_argument, "size distribution needs K-1 entries");
  KahanSum total;
  for (double q : qbar_over_sizes) {
    if (q < 0.0) fail(errc::invalid_argument, "negative size probability");
    total.add(q);
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    fail(errc::normalization_failure, "size distribution sums to " + std::to_string(total.value()));
  GenerationModel m(GenerationKind::mcl, space);
  m.qbar_ = std::move(qbar_over_sizes);
  return m;
}

GenerationModel GenerationModel::skewed(const LabelSpace& space, double alpha) {
  SkewedSizeDistribution skew(alpha, space.num_classes());
  GenerationModel m = multi_complementary(space, skew.probabilities());
  m.alpha_ = alpha;
  return m;
}

GenerationModel GenerationModel::uniform_over_sets(const LabelSpace& space) {
  return GenerationModel(GenerationKind::pcpl, space);
}

GenerationModel GenerationModel::custom(const LabelSpace& space, WeightFn weight) {
  if (space.num_classes() > CandidateSetRange::kDefaultEnumerationCap)
    fail(errc::cap_exceeded, "custom kernels need enumeration; K too large");
  GenerationModel m(GenerationKind::custom_proper, space);
  m.weight_ = std::move(weight);
  return m;
}

double GenerationModel::mcl_conditional(const CandidateSet& s) const {
  const int k = num_classes();
  const double q = qbar_[static_cast<std::size_t>(k - s.size() - 1)];  // Q_{|s|} = qbar_{K-|s|}
  return q / static_cast<double>(binomial(k - 1, s.size() - 1));
}

double GenerationModel::conditional_probability(const std::vector<double>& x, int y,
                                                const CandidateSet& s) const {
  if (!space_.contains(y)) fail(errc::out_of_range, "class " + std::to_string(y));
  if (!s.contains(y)) return 0.0;
  const int k = num_classes();
  switch (kind_) {
    case GenerationKind::cl:
      return s.size() == k - 1 ? 1.0 / static_cast<double>(k - 1) : 0.0;
    case GenerationKind::mcl:
      return mcl_conditional(s);
    case GenerationKind::pcpl:
      return 1.0 / static_cast<double>(candidate_sets_containing_one_class(k));
    case GenerationKind::custom_proper: {
      KahanSum normalizer;
      for (const CandidateSet& t : CandidateSetRange(space_, y)) {
        const double w = weight_(x, t);
        if (w < 0.0 || !std::isfinite(w))
          fail(errc::invalid_argument, "custom weight must be finite and nonnegative");
        normalizer.add(w);
      }
      if (!(normalizer.value() > 0.0))
        fail(errc::normalization_failure,
             "custom weights sum to zero over sets containing " + std::to_string(y));
      return weight_(x, s) / normalizer.value();
    }
  }
  fail(errc::invalid_argument, "bad kind");
}

CandidateSet GenerationModel::sample(const std::vector<double>& x, int y, Rng& rng) const {
  if (!space_.contains(y)) fail(errc::out_of_range, "class " + std::to_string(y));
  const int k = num_classes();
  switch (kind_) {
    case GenerationKind::cl: {
      // One wrong class, uniform; s is everything else.
      std::uint64_t bar = rng.below(static_cast<std::uint64_t>(k - 1)) + 1;
      if (static_cast<int>(bar) >= y) ++bar;  // skip y
      const std::uint64_t mask = space_.full_mask() & ~(std::uint64_t{1} << (bar - 1));
      return CandidateSet::from_mask(mask, space_);
    }
    case GenerationKind::mcl: {
      // Two stages: complementary-set size from qbar, then a uniform subset
      // of the wrong classes at that size.
      const double u = rng.uniform();
      int bar_size = k - 1;
      double acc = 0.0;
      for (int size = 1; size <= k - 1; ++size) {
        acc += qbar_[static_cast<std::size_t>(size - 1)];
        if (u < acc) {
          bar_size = size;
          break;
        }
      }
      std::vector<int> wrong;
      wrong.reserve(static_cast<std::size_t>(k - 1));
      for (int c = 1; c <= k; ++c)
        if (c != y) wrong.push_back(c);
      const std::vector<int> bar =
          rng.sample_without_replacement(std::move(wrong), static_cast<std::size_t>(bar_size));
      std::uint64_t mask = space_.full_mask();
      for (int c : bar) mask &= ~(std::uint64_t{1} << (c - 1));
      return CandidateSet::from_mask(mask, space_);
    }
    case GenerationKind::pcpl: {
      // Uniform over the 2^(K-1)-1 sets containing y: draw the membership
      // pattern of the other K-1 classes, excluding the all-ones pattern.
      const std::uint64_t pattern =
          rng.below(candidate_sets_containing_one_class(k));  // in [0, 2^(K-1)-2]
      std::uint64_t mask = std::uint64_t{1} << (y - 1);
      int bit = 0;
      for (int c = 1; c <= k; ++c) {
        if (c == y) continue;
        if ((pattern >> bit) & 1) mask |= std::uint64_t{1} << (c - 1);
        ++bit;
      }
      return CandidateSet::from_mask(mask, space_);
    }
    case GenerationKind::custom_proper: {
      std::vector<CandidateSet> sets;
      std::vector<double> weights;
      KahanSum total;
      for (const CandidateSet& t : CandidateSetRange(space_, y)) {
        const double w = weight_(x, t);
        if (w < 0.0 || !std::isfinite(w))
          fail(errc::invalid_argument, "custom weight must be finite and nonnegative");
        sets.push_back(t);
        weights.push_back(w);
        total.add(w);
      }
      if (!(total.value() > 0.0))
        fail(errc::normalization_failure,
             "custom weights sum to zero over sets containing " + std::to_string(y));
      const double u = rng.uniform() * total.value();
      double acc = 0.0;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        acc += weights[i];
        if (u < acc) return sets[i];
      }
      return sets.back();
    }
  }
  fail(errc::invalid_argument, "bad kind");
}

DiscreteDistribution GenerationModel::size_distribution() const {
  const int k = num_classes();
  std::vector<std::pair<int, double>> support;
  switch (kind_) {
    case GenerationKind::cl:
      for (int size = 1; size <= k - 1; ++size)
        support.emplace_back(size, size == k - 1 ? 1.0 : 0.0);
      break;
    case GenerationKind::mcl:
      for (int size = 1; size <= k - 1; ++size)
        support.emplace_back(size, qbar_[static_cast<std::size_t>(k - size - 1)]);
      break;
    case GenerationKind::pcpl: {
      const double denom = static_cast<double>(candidate_sets_containing_one_class(k));
      for (int size = 1; size <= k - 1; ++size)
        support.emplace_back(size, static_cast<double>(binomial(k - 1, size - 1)) / denom);
      break;
    }
    case GenerationKind::custom_proper:
      fail(errc::unsupported, "custom kernels have no x-independent size law");
  }
  return DiscreteDistribution(std::move(support), 1e-10);
}

nlohmann::json GenerationModel::descriptor(std::uint64_t seed) const {
  nlohmann::json d;
  d["kind"] = kind_name(kind_);
  d["K"] = num_classes();
  if (alpha_) d["alpha"] = *alpha_;
  if (kind_ == GenerationKind::mcl && !alpha_) d["qbar"] = qbar_;
  d["seed"] = seed;
  return d;
}

GenerationModel GenerationModel::from_descriptor(const nlohmann::json& d) {
  if (!d.is_object() || !d.contains("kind") || !d.contains("K"))
    fail(errc::parse_error, "generation-model descriptor needs 'kind' and 'K'");
  const LabelSpace space(d.at("K").get<int>());
  switch (kind_from_name(d.at("kind").get<std::string>())) {
    case GenerationKind::cl:
      return complementary(space);
    case GenerationKind::mcl:
      if (d.contains("alpha")) return skewed(space, d.at("alpha").get<double>());
      if (d.contains("qbar"))
        return multi_complementary(space, d.at("qbar").get<std::vector<double>>());
      fail(errc::parse_error, "mcl descriptor needs 'alpha' or 'qbar'");
    case GenerationKind::pcpl:
      return uniform_over_sets(space);
    case GenerationKind::custom_proper:
      fail(errc::unsupported, "custom kernels are not serializable");
  }
  fail(errc::parse_error, "bad descriptor");
}

}  // namespace ppl

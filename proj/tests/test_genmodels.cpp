#include "doctest.h"

#include <cmath>
#include <map>

#include "genmodels/generation_model.hpp"
#include "support.hpp"

using namespace ppl;

namespace {

const std::vector<double> kNoFeatures{};

// Empirical law of `model.sample` against a reference pmf via chi-square.
void check_sampling_law(const GenerationModel& model, int y, std::uint64_t seed,
                        int draws = 100000, double significance = 1e-3) {
  Rng rng(seed);
  std::map<std::uint64_t, int> counts;
  for (int i = 0; i < draws; ++i) {
    const CandidateSet s = model.sample(kNoFeatures, y, rng);
    REQUIRE(s.contains(y));
    counts[s.mask()]++;
  }
  double statistic = 0.0;
  int cells = 0;
  for (const CandidateSet& s : CandidateSetRange(model.label_space(), y)) {
    const double p = model.conditional_probability(kNoFeatures, y, s);
    const double expected = p * draws;
    const auto it = counts.find(s.mask());
    const double observed = it == counts.end() ? 0.0 : it->second;
    if (expected == 0.0) {
      CHECK(observed == 0.0);
      continue;
    }
    statistic += (observed - expected) * (observed - expected) / expected;
    ++cells;
  }
  CHECK(test::chi_square_p_value(statistic, cells - 1) > significance);
}

}  // namespace

TEST_SUITE("genmodels") {

TEST_CASE("binomial coefficients are exact") {
  CHECK(binomial(9, 4) == 126);
  CHECK(binomial(3, 1) == 3);
  CHECK(binomial(63, 31) == 916312070471295267ULL);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 6) == 0);
}

TEST_CASE("conditional probabilities of the closed-form kinds") {
  const LabelSpace k10(10);
  const auto cl = GenerationModel::complementary(k10);
  const auto pcpl = GenerationModel::uniform_over_sets(k10);

  CandidateSet big = CandidateSet::singleton(1, k10).complement();  // |s| = 9, contains 2..10
  CHECK(cl.conditional_probability(kNoFeatures, 2, big) == 1.0 / 9.0);
  CHECK(pcpl.conditional_probability(kNoFeatures, 2, big) == 1.0 / 511.0);

  // Outside the candidate set the kernel is exactly zero.
  CHECK(cl.conditional_probability(kNoFeatures, 1, big) == 0.0);
  CHECK(pcpl.conditional_probability(kNoFeatures, 1, big) == 0.0);

  // The complementary kind only produces maximal candidate sets.
  CHECK(cl.conditional_probability(kNoFeatures, 2, CandidateSet::from_members({2, 3}, k10)) ==
        0.0);
}

TEST_CASE("skewed size distribution") {
  const SkewedSizeDistribution skew(0.8, 10);
  const auto& q = skew.probabilities();
  REQUIRE(q.size() == 9);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i)
    CHECK(q[i + 1] == doctest::Approx(0.8 * q[i]).epsilon(1e-12));
  for (double v : q) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(SkewedSizeDistribution(0.0, 10), Error);
  CHECK_THROWS_AS(SkewedSizeDistribution(1.5, 10), Error);
}

TEST_CASE("expected candidate set sizes match the skew law") {
  const LabelSpace k10(10);
  CHECK(std::abs(GenerationModel::skewed(k10, 0.9).expected_candidate_set_size() - 5.69) < 0.005);
  CHECK(std::abs(GenerationModel::skewed(k10, 0.8).expected_candidate_set_size() - 6.40) < 0.005);
  CHECK(std::abs(GenerationModel::skewed(k10, 0.7).expected_candidate_set_size() - 7.05) < 0.005);
}

TEST_CASE("uniform-set size law agrees with exhaustive enumeration") {
  const LabelSpace k10(10);
  const auto pcpl = GenerationModel::uniform_over_sets(k10);

  // Independent route: count sets by brute-force enumeration around a fixed
  // true label, then divide by the number of sets containing it.
  std::size_t total_sets = 0;
  std::size_t size5 = 0;
  std::size_t size_sum = 0;
  for (const CandidateSet& s : CandidateSetRange(k10, 3)) {
    ++total_sets;
    size_sum += static_cast<std::size_t>(s.size());
    if (s.size() == 5) ++size5;
  }
  CHECK(total_sets == 511);
  CHECK(size5 == 126);

  const DiscreteDistribution q = pcpl.size_distribution();
  CHECK(q.probability_of(5) == doctest::Approx(126.0 / 511.0).epsilon(1e-15));
  CHECK(pcpl.expected_candidate_set_size() ==
        doctest::Approx(static_cast<double>(size_sum) / 511.0).epsilon(1e-15));
  CHECK(size_sum == 2806);

  const auto cl_q = GenerationModel::complementary(k10).size_distribution();
  CHECK(cl_q.probability_of(9) == 1.0);
  CHECK(cl_q.probability_of(4) == 0.0);

  const auto skew_q = GenerationModel::skewed(k10, 0.9).size_distribution();
  const SkewedSizeDistribution skew(0.9, 10);
  for (int size = 1; size <= 9; ++size)
    CHECK(skew_q.probability_of(size) ==
          skew.probabilities()[static_cast<std::size_t>(10 - size - 1)]);
}

TEST_CASE("properness and normalization for every kind") {
  for (int k = 3; k <= 6; ++k) {
    const LabelSpace space(k);
    std::vector<GenerationModel> models;
    models.push_back(GenerationModel::complementary(space));
    models.push_back(GenerationModel::skewed(space, 0.8));
    models.push_back(GenerationModel::uniform_over_sets(space));
    for (const auto& model : models) {
      for (const CandidateSet& s : CandidateSetRange(space)) {
        double inside = -1.0;
        for (int y = 1; y <= k; ++y) {
          const double p = model.conditional_probability(kNoFeatures, y, s);
          if (!s.contains(y)) {
            CHECK(p == 0.0);
          } else if (inside < 0.0) {
            inside = p;
          } else {
            CHECK(p == inside);  // exact: the kernel ignores which member is true
          }
        }
      }
      for (int y = 1; y <= k; ++y) {
        KahanSum total;
        for (const CandidateSet& s : CandidateSetRange(space, y))
          total.add(model.conditional_probability(kNoFeatures, y, s));
        CHECK(std::abs(total.value() - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("uniform-set kernel is a multi-complementary kernel; converse fails") {
  for (int k = 3; k <= 6; ++k) {
    const LabelSpace space(k);
    const auto pcpl = GenerationModel::uniform_over_sets(space);
    const double denom = static_cast<double>(candidate_sets_containing_one_class(k));
    std::vector<double> qbar(static_cast<std::size_t>(k - 1));
    for (int bar_size = 1; bar_size <= k - 1; ++bar_size)
      qbar[static_cast<std::size_t>(bar_size - 1)] =
          static_cast<double>(binomial(k - 1, k - bar_size - 1)) / denom;
    const auto mcl = GenerationModel::multi_complementary(space, qbar);
    for (const CandidateSet& s : CandidateSetRange(space))
      for (int y = 1; y <= k; ++y)
        CHECK(mcl.conditional_probability(kNoFeatures, y, s) ==
              doctest::Approx(pcpl.conditional_probability(kNoFeatures, y, s)).epsilon(1e-14));

    // A size law concentrated on one wrong class is multi-complementary but
    // matches no uniform-set kernel: singletons get zero there.
    std::vector<double> point(static_cast<std::size_t>(k - 1), 0.0);
    point[0] = 1.0;
    const auto cl_like = GenerationModel::multi_complementary(space, point);
    const CandidateSet single = CandidateSet::singleton(1, space);
    CHECK(cl_like.conditional_probability(kNoFeatures, 1, single) == 0.0);
    CHECK(pcpl.conditional_probability(kNoFeatures, 1, single) > 0.0);
  }
}

TEST_CASE("complementary kind equals the point-mass multi-complementary kind") {
  for (int k = 3; k <= 6; ++k) {
    const LabelSpace space(k);
    const auto cl = GenerationModel::complementary(space);
    std::vector<double> point(static_cast<std::size_t>(k - 1), 0.0);
    point[0] = 1.0;  // complementary set always has size 1
    const auto mcl = GenerationModel::multi_complementary(space, point);
    for (const CandidateSet& s : CandidateSetRange(space))
      for (int y = 1; y <= k; ++y)
        CHECK(cl.conditional_probability(kNoFeatures, y, s) ==
              mcl.conditional_probability(kNoFeatures, y, s));
  }
}

TEST_CASE("expected size decreases strictly in alpha") {
  const LabelSpace k10(10);
  double prev = -1.0;
  for (double alpha : {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1}) {
    const double mean = GenerationModel::skewed(k10, alpha).expected_candidate_set_size();
    if (prev >= 0.0) CHECK(mean > prev);
    prev = mean;
  }
}

TEST_CASE("sampling matches the kernels") {
  const LabelSpace k3(3);
  const auto cl = GenerationModel::complementary(k3);
  Rng rng(77001);
  int first = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const CandidateSet s = cl.sample(kNoFeatures, 1, rng);
    CHECK(s.size() == 2);
    CHECK(s.contains(1));
    if (s.contains(2)) ++first;
  }
  const double freq = static_cast<double>(first) / draws;
  const double sigma = std::sqrt(0.25 / draws);
  CHECK(std::abs(freq - 0.5) < 3.0 * sigma);

  check_sampling_law(GenerationModel::uniform_over_sets(LabelSpace(4)), 2, 41823);
  check_sampling_law(GenerationModel::skewed(LabelSpace(5), 0.7), 3, 91131);
  check_sampling_law(GenerationModel::complementary(LabelSpace(4)), 1, 55100);

  // Point mass on the largest complementary set forces the singleton.
  std::vector<double> qbar(9, 0.0);
  qbar[8] = 1.0;
  const auto forced = GenerationModel::multi_complementary(LabelSpace(10), qbar);
  Rng rng2(5);
  for (int i = 0; i < 100; ++i) {
    const CandidateSet s = forced.sample(kNoFeatures, 4, rng2);
    CHECK(s.size() == 1);
    CHECK(s.contains(4));
  }
}

TEST_CASE("custom kernels normalize per true label") {
  const LabelSpace k4(4);
  // Weight favoring small sets; y-independent normalizer is not required for
  // these probing calls, only nonnegativity and a positive total.
  const auto model = GenerationModel::custom(
      k4, [](const std::vector<double>&, const CandidateSet& s) {
        return 1.0 / static_cast<double>(s.size());
      });
  for (int y = 1; y <= 4; ++y) {
    KahanSum total;
    for (const CandidateSet& s : CandidateSetRange(k4, y))
      total.add(model.conditional_probability(kNoFeatures, y, s));
    CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(model.conditional_probability(kNoFeatures, 1, CandidateSet::from_members({2, 3}, k4)) ==
        0.0);
  CHECK_THROWS_AS(model.size_distribution(), Error);

  const auto zero = GenerationModel::custom(
      k4, [](const std::vector<double>&, const CandidateSet&) { return 0.0; });
  CHECK_THROWS_WITH_AS(
      zero.conditional_probability(kNoFeatures, 1, CandidateSet::singleton(1, k4)),
      doctest::Contains("normalization_failure"), Error);
}

TEST_CASE("descriptor round-trip") {
  const LabelSpace k10(10);
  const auto skew = GenerationModel::skewed(k10, 0.9);
  const nlohmann::json d = skew.descriptor(42);
  CHECK(d.at("kind") == "mcl");
  CHECK(d.at("alpha") == 0.9);
  CHECK(d.at("seed") == 42);
  const auto back = GenerationModel::from_descriptor(d);
  CHECK(back.kind() == GenerationKind::mcl);
  CHECK(back.expected_candidate_set_size() == skew.expected_candidate_set_size());

  const auto pcpl_back =
      GenerationModel::from_descriptor(GenerationModel::uniform_over_sets(k10).descriptor());
  CHECK(pcpl_back.kind() == GenerationKind::pcpl);

  CHECK_THROWS_AS(GenerationModel::from_descriptor(nlohmann::json{{"kind", "nope"}, {"K", 4}}),
                  Error);
}

}  // TEST_SUITE

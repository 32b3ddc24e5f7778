#include "doctest.h"

#include <cmath>

#include "oracle/checks.hpp"
#include "oracle/suite.hpp"

using namespace ppl;
using namespace ppl::oracle;

namespace {

// Two points, three classes, strictly positive joint with hand-traceable
// marginals: p(x) = (0.35, 0.65), posteriors (2,4,1)/7 and (6,3,4)/13.
DiscreteScenario fixed_scenario() {
  Eigen::MatrixXd joint(2, 3);
  joint << 0.10, 0.20, 0.05, 0.30, 0.15, 0.20;
  return DiscreteScenario({{0.0, 0.0}, {1.0, 1.0}}, joint);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("scenario bookkeeping and validation") {
  const DiscreteScenario sc = fixed_scenario();
  CHECK(sc.num_points() == 2);
  CHECK(sc.num_classes() == 3);
  CHECK(sc.marginal_x(0) == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(sc.posterior(0, 2) == doctest::Approx(4.0 / 7).epsilon(1e-15));
  CHECK(sc.posterior(1, 1) == doctest::Approx(6.0 / 13).epsilon(1e-15));
  CHECK(sc.class_prior(1) == doctest::Approx(0.40).epsilon(1e-15));

  Eigen::MatrixXd bad(1, 3);
  bad << 0.5, 0.5, 0.1;
  CHECK_THROWS_AS(DiscreteScenario({{0.0}}, bad), Error);
  Eigen::MatrixXd zero_row(2, 3);
  zero_row << 1.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(DiscreteScenario({{0.0}, {1.0}}, zero_row), Error);

  const DiscreteScenario r = DiscreteScenario::random(5, 3, 42);
  CHECK(r.num_points() == 3);
  double total = 0.0;
  for (Eigen::Index i = 0; i < 3; ++i)
    for (int y = 1; y <= 5; ++y) total += r.joint(i, y);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("kernel tables agree with hand-computed joints") {
  const DiscreteScenario sc = fixed_scenario();
  const KernelTable pcpl =
      KernelTable::from_model(GenerationModel::uniform_over_sets(sc.label_space()), sc);
  const CandidateSet s12 = CandidateSet::from_members({1, 2}, sc.label_space());

  CHECK(pcpl.value(0, s12, 1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(pcpl.value(0, s12, 3) == 0.0);
  // p(x0, {1,2}) = (0.10 + 0.20) / 3.
  CHECK(pcpl.joint_with_set(sc, 0, s12) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(pcpl.max_normalization_error() < 1e-12);

  const KernelTable bent = pcpl.perturb_cell(s12, 1, 2.0);
  CHECK(bent.max_normalization_error() < 1e-12);
  CHECK(bent.value(0, s12, 1) > bent.value(0, s12, 2));
}

TEST_CASE("properness detector") {
  const DiscreteScenario sc = fixed_scenario();
  const KernelTable pcpl =
      KernelTable::from_model(GenerationModel::uniform_over_sets(sc.label_space()), sc);

  const CheckResult good = check_properness("p", pcpl, sc);
  CHECK(good.status == CheckStatus::pass);
  CHECK(good.max_deviation == 0.0);

  const CandidateSet s12 = CandidateSet::from_members({1, 2}, sc.label_space());
  const CheckResult bad = check_properness("p", pcpl.perturb_cell(s12, 1, 2.0), sc);
  CHECK(bad.status == CheckStatus::fail);
  CHECK(bad.max_deviation > 0.01);
  CHECK(!bad.witness.empty());

  const CheckResult wrapped = invert("w", "detects the bend", bad);
  CHECK(wrapped.status == CheckStatus::pass);
  const CheckResult wrong = invert("w", "should have failed", good);
  CHECK(wrong.status == CheckStatus::fail);
}

TEST_CASE("confidence identity matches Bayes on the fixed scenario") {
  const DiscreteScenario sc = fixed_scenario();
  const KernelTable pcpl =
      KernelTable::from_model(GenerationModel::uniform_over_sets(sc.label_space()), sc);
  const CandidateSet s12 = CandidateSet::from_members({1, 2}, sc.label_space());

  // Hand values: restriction of (2/7, 4/7, 1/7) to {1,2} is (1/3, 2/3).
  const Eigen::VectorXd conf = confidence_from_posterior(sc.posterior_row(0), s12);
  CHECK(conf(0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(conf(1) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  const double bayes1 = sc.joint(0, 1) * pcpl.value(0, s12, 1) / pcpl.joint_with_set(sc, 0, s12);
  CHECK(bayes1 == doctest::Approx(1.0 / 3).epsilon(1e-14));

  CHECK(check_confidence_identity("c", pcpl, sc).status == CheckStatus::pass);
  CHECK(check_confidence_identity("c", pcpl.perturb_cell(s12, 1, 2.0), sc).status ==
        CheckStatus::fail);
  CHECK(check_confidence_identity("c", x_dependent_proper_kernel(sc), sc).status ==
        CheckStatus::pass);
}

TEST_CASE("risk rewrite holds on factorized kernels and breaks on bent ones") {
  const DiscreteScenario sc = fixed_scenario();
  const KernelTable pcpl =
      KernelTable::from_model(GenerationModel::uniform_over_sets(sc.label_space()), sc);
  const CheckResult ok = check_risk_rewrite("r", pcpl, sc, 7);
  CHECK(ok.status == CheckStatus::pass);
  CHECK(ok.max_deviation < 1e-12);

  const CandidateSet s12 = CandidateSet::from_members({1, 2}, sc.label_space());
  const CheckResult bent = check_risk_rewrite("r", pcpl.perturb_cell(s12, 1, 2.0), sc, 7);
  CHECK(bent.status == CheckStatus::fail);
  CHECK(bent.max_deviation > 1e-4);
}

TEST_CASE("single-cell complementary identity") {
  // For K=3, averaging the complementary contribution over the two wrong
  // classes returns exactly the loss at the true class.
  const LabelSpace k3(3);
  Eigen::MatrixXd joint(1, 3);
  joint << 0.2, 0.5, 0.3;
  const DiscreteScenario sc({{0.0, 0.0}}, joint);
  const Eigen::RowVector3d ell(1.7, 0.4, 2.9);

  for (int y = 1; y <= 3; ++y) {
    double expectation = 0.0;
    for (int bar = 1; bar <= 3; ++bar) {
      if (bar == y) continue;
      double contrib = 0.0;
      for (int j = 1; j <= 3; ++j)
        if (j != bar) contrib += ell(j - 1);
      contrib -= 1.0 * ell(bar - 1);  // (K-2) = 1
      expectation += 0.5 * contrib;
    }
    CHECK(expectation == doctest::Approx(ell(y - 1)).epsilon(1e-14));
  }
}

TEST_CASE("estimator unbiasedness across kernels") {
  const DiscreteScenario sc = DiscreteScenario::random(4, 3, 99);
  const LabelSpace space = sc.label_space();
  const KernelTable cl = KernelTable::from_model(GenerationModel::complementary(space), sc);
  const KernelTable mcl = KernelTable::from_model(GenerationModel::skewed(space, 0.8), sc);
  const KernelTable pcpl = KernelTable::from_model(GenerationModel::uniform_over_sets(space), sc);

  CHECK(check_estimator_unbiasedness("u", cl, sc, EstimatorKind::ppl, 1).max_deviation < 1e-12);
  CHECK(check_estimator_unbiasedness("u", mcl, sc, EstimatorKind::ppl, 2).max_deviation < 1e-12);
  CHECK(check_estimator_unbiasedness("u", pcpl, sc, EstimatorKind::ppl, 3).max_deviation < 1e-12);
  CHECK(check_estimator_unbiasedness("u", cl, sc, EstimatorKind::cl, 4).max_deviation < 1e-12);
  CHECK(check_estimator_unbiasedness("u", mcl, sc, EstimatorKind::mcl, 5).max_deviation < 1e-12);
  CHECK(check_estimator_unbiasedness("u", pcpl, sc, EstimatorKind::mcl, 6).max_deviation < 1e-12);

  // The halved all-class form: exact under the uniform kernel only.
  CHECK(check_estimator_unbiasedness("u", pcpl, sc, EstimatorKind::cc, 7).max_deviation < 1e-12);
  const CheckResult biased = check_estimator_unbiasedness("u", mcl, sc, EstimatorKind::cc, 8, 5,
                                                          1e-12, /*informational=*/true);
  CHECK(biased.status == CheckStatus::info);
  CHECK(biased.max_deviation > 1e-3);
}

TEST_CASE("size law counts") {
  const DiscreteScenario sc3 = DiscreteScenario::random(3, 2, 1);
  const DiscreteScenario sc4 = DiscreteScenario::random(4, 2, 2);
  CHECK(check_uniform_size_law("s", 3, sc3).status == CheckStatus::pass);
  CHECK(check_uniform_size_law("s", 4, sc4).status == CheckStatus::pass);

  // Reference proportions: K=4 gives (1,3,3)/7 over sizes 1..3, K=3 (1,2)/3.
  const auto q4 = GenerationModel::uniform_over_sets(LabelSpace(4)).size_distribution();
  CHECK(q4.probability_of(1) == doctest::Approx(1.0 / 7).epsilon(1e-15));
  CHECK(q4.probability_of(2) == doctest::Approx(3.0 / 7).epsilon(1e-15));
  CHECK(q4.probability_of(3) == doctest::Approx(3.0 / 7).epsilon(1e-15));
  const auto q3 = GenerationModel::uniform_over_sets(LabelSpace(3)).size_distribution();
  CHECK(q3.probability_of(1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(q3.probability_of(2) == doctest::Approx(2.0 / 3).epsilon(1e-15));
}

TEST_CASE("family separations") {
  const DiscreteScenario sc = fixed_scenario();
  const LabelSpace space = sc.label_space();
  const KernelTable cl = KernelTable::from_model(GenerationModel::complementary(space), sc);
  const KernelTable pcpl = KernelTable::from_model(GenerationModel::uniform_over_sets(space), sc);

  CHECK(check_kernel_difference("d", "", cl, pcpl).status == CheckStatus::pass);
  CHECK(check_kernel_difference("d", "", cl, cl).status == CheckStatus::fail);
  CHECK(check_x_independence("x", pcpl).status == CheckStatus::pass);
  CHECK(check_x_independence("x", x_dependent_proper_kernel(sc)).status == CheckStatus::fail);

  const KernelTable asym = size_asymmetric_kernel(sc);
  CHECK(check_properness("p", asym, sc).status == CheckStatus::pass);
  CHECK(check_x_independence("x", asym).status == CheckStatus::pass);
  CHECK(check_size_asymmetry("a", asym, sc).status == CheckStatus::pass);
  CHECK(check_size_asymmetry("a", pcpl, sc).status == CheckStatus::fail);
}

TEST_CASE("full suite passes and is deterministic") {
  VerifyOptions options;
  options.k_values = {3, 4, 5, 6};
  const VerificationReport a = run_verification(options);
  CHECK(a.all_passed());
  CHECK(a.failures() == 0);
  CHECK(a.checks().size() > 100);

  const VerificationReport b = run_verification(options);
  CHECK(a.to_json() == b.to_json());

  // Rendering mentions every check.
  const std::string table = a.render_table();
  for (const auto& c : a.checks()) CHECK(table.find(c.name) != std::string::npos);

  VerifyOptions bad = options;
  bad.k_values = {3};
  bad.inject_nonproper = true;
  const VerificationReport injected = run_verification(bad);
  CHECK(!injected.all_passed());
  CHECK(injected.failures() == 1);

  VerifyOptions capped;
  capped.k_values = {7};
  CHECK_THROWS_WITH_AS(run_verification(capped), doctest::Contains("cap_exceeded"), Error);
}

}  // TEST_SUITE

#include "oracle/checks.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "estimators/confidence.hpp"
#include "nn/ops.hpp"

namespace ppl::oracle {

namespace {

std::string cell_name(Eigen::Index xi, const CandidateSet& s, int y) {
  std::ostringstream out;
  out << "x" << xi << ", s=" << s.to_string() << ", y=" << y;
  return out.str();
}

// Cross-entropy loss table for one score assignment: L(x, j) = -log p_j.
Eigen::MatrixXd loss_table(const DiscreteScenario& scenario, Rng& rng) {
  Eigen::MatrixXd scores(scenario.num_points(), scenario.num_classes());
  for (Eigen::Index i = 0; i < scores.rows(); ++i)
    for (Eigen::Index j = 0; j < scores.cols(); ++j) scores(i, j) = rng.uniform(-2.0, 2.0);
  return -log_softmax(scores);
}

double classification_risk(const DiscreteScenario& scenario, const Eigen::MatrixXd& losses) {
  KahanSum risk;
  for (Eigen::Index xi = 0; xi < scenario.num_points(); ++xi)
    for (int y = 1; y <= scenario.num_classes(); ++y)
      risk.add(scenario.joint(xi, y) * losses(xi, y - 1));
  return risk.value();
}

// Single-example dataset so estimator contributions come from the production
// code path rather than a re-derivation inside the oracle.
Dataset cell_dataset(const DiscreteScenario& scenario, Eigen::Index xi, const CandidateSet& s) {
  const auto& pt = scenario.point(xi);
  Eigen::MatrixXd x(1, static_cast<Eigen::Index>(pt.size()));
  for (std::size_t j = 0; j < pt.size(); ++j) x(0, static_cast<Eigen::Index>(j)) = pt[j];
  return Dataset(scenario.label_space(), std::move(x), {std::nullopt}, {s});
}

double cell_contribution(EstimatorKind kind, const DiscreteScenario& scenario, Eigen::Index xi,
                         const CandidateSet& s, const Eigen::MatrixXd& losses) {
  const Dataset d = cell_dataset(scenario, xi, s);
  const Eigen::MatrixXd loss_row = losses.row(xi);
  switch (kind) {
    case EstimatorKind::ppl: {
      Eigen::MatrixXd posterior(1, scenario.num_classes());
      posterior.row(0) = scenario.posterior_row(xi).transpose();
      return candidate_weighted_risk(d, ConfidenceMatrix::from_posterior(d, posterior), loss_row)
          .value;
    }
    case EstimatorKind::cl:
      return complementary_risk(d, loss_row).value;
    case EstimatorKind::mcl:
      return multi_complementary_risk(d, loss_row).value;
    case EstimatorKind::cc: {
      Eigen::MatrixXd posterior(1, scenario.num_classes());
      posterior.row(0) = scenario.posterior_row(xi).transpose();
      return uniform_set_risk(d, posterior, loss_row, /*literal_form=*/true).value;
    }
    case EstimatorKind::supervised:
      break;
  }
  fail(errc::invalid_argument, "estimator kind has no weak-label contribution");
}

}  // namespace

KernelTable x_dependent_proper_kernel(const DiscreteScenario& scenario) {
  const int k = scenario.num_classes();
  std::vector<SkewedSizeDistribution> skews;
  for (Eigen::Index xi = 0; xi < scenario.num_points(); ++xi)
    skews.emplace_back(0.55 + 0.1 * static_cast<double>(xi % 4), k);
  return KernelTable::from_function(
      scenario, scenario.label_space(),
      [k, skews = std::move(skews)](Eigen::Index xi, const CandidateSet& s, int y) {
        if (!s.contains(y)) return 0.0;
        const auto& qbar = skews[static_cast<std::size_t>(xi)].probabilities();
        const double q = qbar[static_cast<std::size_t>(k - s.size() - 1)];
        return q / static_cast<double>(binomial(k - 1, s.size() - 1));
      });
}

KernelTable size_asymmetric_kernel(const DiscreteScenario& scenario) {
  const int k = scenario.num_classes();
  const LabelSpace& space = scenario.label_space();
  const double base = 1.0 / static_cast<double>(candidate_sets_containing_one_class(k));
  const double eps = base / 2.0;
  const std::uint64_t m1 = CandidateSet::singleton(1, space).mask();
  const std::uint64_t m2 = CandidateSet::singleton(2, space).mask();
  const std::uint64_t m12 = CandidateSet::from_members({1, 2}, space).mask();
  return KernelTable::from_function(
      scenario, space, [=](Eigen::Index, const CandidateSet& s, int y) {
        if (!s.contains(y)) return 0.0;
        // The +eps on {1} and {2} cancels the -eps on {1,2} in every row, so
        // normalization survives while C stops being a function of |s|.
        if (s.mask() == m1 || s.mask() == m2) return base + eps;
        if (s.mask() == m12) return base - eps;
        return base;
      });
}

CheckResult check_properness(const std::string& name, const KernelTable& kernel,
                             const DiscreteScenario& scenario, double tolerance) {
  CheckResult result;
  result.name = name;
  result.claim = "kernel factorizes as C(x,s) * 1{y in s}";
  for (Eigen::Index xi = 0; xi < scenario.num_points(); ++xi) {
    for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
      double inside = -1.0;
      int inside_y = 0;
      for (int y = 1; y <= kernel.num_classes(); ++y) {
        const double p = kernel.value(xi, s, y);
        if (!s.contains(y)) {
          if (p != 0.0) {
            result.status = CheckStatus::fail;
            result.max_deviation = std::max(result.max_deviation, std::abs(p));
            if (result.witness.empty())
              result.witness = cell_name(xi, s, y) + " has mass outside the set";
          }
          continue;
        }
        if (inside < 0.0) {
          inside = p;
          inside_y = y;
          continue;
        }
        const double dev = std::abs(p - inside);
        result.max_deviation = std::max(result.max_deviation, dev);
        if (dev > tolerance && result.witness.empty()) {
          result.status = CheckStatus::fail;
          result.witness = "p differs across candidates at " + cell_name(xi, s, inside_y) +
                           " vs y=" + std::to_string(y);
        }
        if (dev > tolerance) result.status = CheckStatus::fail;
      }
    }
  }
  return result;
}

CheckResult check_conditional_independence_equivalence(const std::string& name,
                                                       const KernelTable& kernel,
                                                       const DiscreteScenario& scenario,
                                                       double tolerance) {
  CheckResult result;
  result.name = name;
  result.claim =
      "x-free factorized form holds iff the kernel is x-independent and its x-marginal "
      "factorizes";

  // Side A: kernel equals C(s) * 1{y in s} for a set function free of x and y.
  bool side_a = true;
  for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
    double seen = -1.0;
    for (Eigen::Index xi = 0; xi < scenario.num_points() && side_a; ++xi)
      for (int y = 1; y <= kernel.num_classes(); ++y) {
        const double p = kernel.value(xi, s, y);
        if (!s.contains(y)) {
          if (p != 0.0) side_a = false;
          continue;
        }
        if (seen < 0.0)
          seen = p;
        else if (std::abs(p - seen) > tolerance)
          side_a = false;
      }
    if (!side_a) break;
  }

  // Side B, first part: p(s|x,y) matches the x-marginal p(s|y) wherever the
  // pair (x, y) has probability.
  bool side_b = true;
  std::map<std::pair<std::uint64_t, int>, double> marginal;  // (mask, y) -> p(s|y)
  for (int y = 1; y <= kernel.num_classes(); ++y) {
    const double prior = scenario.class_prior(y);
    for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
      KahanSum sum;
      for (Eigen::Index xi = 0; xi < scenario.num_points(); ++xi)
        sum.add(scenario.joint(xi, y) / prior * kernel.value(xi, s, y));
      marginal[{s.mask(), y}] = sum.value();
    }
  }
  for (Eigen::Index xi = 0; xi < scenario.num_points() && side_b; ++xi)
    for (int y = 1; y <= kernel.num_classes() && side_b; ++y) {
      if (scenario.joint(xi, y) <= 0.0) continue;
      for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
        const double dev = std::abs(kernel.value(xi, s, y) - marginal[{s.mask(), y}]);
        result.max_deviation = std::max(result.max_deviation, std::min(dev, 1.0));
        if (dev > tolerance) {
          side_b = false;
          break;
        }
      }
    }
  // Side B, second part: the x-marginal itself factorizes as C(s)1{y in s}.
  for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
    if (!side_b) break;
    double seen = -1.0;
    for (int y = 1; y <= kernel.num_classes(); ++y) {
      const double p = marginal[{s.mask(), y}];
      if (!s.contains(y)) {
        if (std::abs(p) > tolerance) side_b = false;
        continue;
      }
      if (seen < 0.0)
        seen = p;
      else if (std::abs(p - seen) > tolerance)
        side_b = false;
    }
  }

  if (side_a != side_b) {
    result.status = CheckStatus::fail;
    result.witness = std::string("x-free form ") + (side_a ? "holds" : "fails") +
                     " but the marginalized route " + (side_b ? "holds" : "fails");
  } else {
    result.note = side_a ? "both routes affirm the x-free form"
                         : "both routes reject the x-free form";
  }
  return result;
}

CheckResult check_uniform_size_law(const std::string& name, int num_classes,
                                   const DiscreteScenario& scenario) {
  CheckResult result;
  result.name = name;
  result.claim = "uniform-set size law is binom(K-1,k-1)/(2^(K-1)-1), integer-exact";

  const LabelSpace space(num_classes);
  for (int y = 1; y <= num_classes; ++y) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(num_classes), 0);
    std::uint64_t total = 0;
    for (const CandidateSet& s : CandidateSetRange(space, y)) {
      counts[static_cast<std::size_t>(s.size() - 1)]++;
      ++total;
    }
    if (total != candidate_sets_containing_one_class(num_classes)) {
      result.status = CheckStatus::fail;
      result.witness = "set count around y=" + std::to_string(y) + " is " + std::to_string(total);
      return result;
    }
    for (int k = 1; k <= num_classes - 1; ++k) {
      if (counts[static_cast<std::size_t>(k - 1)] != binomial(num_classes - 1, k - 1)) {
        result.status = CheckStatus::fail;
        result.witness = "size " + std::to_string(k) + " count " +
                         std::to_string(counts[static_cast<std::size_t>(k - 1)]) +
                         " != binom(K-1,k-1)";
        return result;
      }
    }
  }

  // The kernel with that size law reproduces the uniform kernel cell by cell.
  const auto pcpl = GenerationModel::uniform_over_sets(space);
  const double denom = static_cast<double>(candidate_sets_containing_one_class(num_classes));
  std::vector<double> qbar(static_cast<std::size_t>(num_classes - 1));
  for (int bar = 1; bar <= num_classes - 1; ++bar)
    qbar[static_cast<std::size_t>(bar - 1)] =
        static_cast<double>(binomial(num_classes - 1, num_classes - bar - 1)) / denom;
  const auto mcl = GenerationModel::multi_complementary(space, qbar);
  const CheckResult cells =
      check_kernel_equality(name + ".cells", "", KernelTable::from_model(pcpl, scenario),
                            KernelTable::from_model(mcl, scenario));
  result.max_deviation = cells.max_deviation;
  if (cells.status == CheckStatus::fail) {
    result.status = CheckStatus::fail;
    result.witness = cells.witness;
  }
  return result;
}

CheckResult check_confidence_identity(const std::string& name, const KernelTable& kernel,
                                      const DiscreteScenario& scenario, double tolerance) {
  CheckResult result;
  result.name = name;
  result.claim = "Bayes candidate confidence equals the renormalized class posterior";
  for (Eigen::Index xi = 0; xi < scenario.num_points(); ++xi) {
    for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
      const double pxs = kernel.joint_with_set(scenario, xi, s);
      if (pxs <= 0.0) continue;
      const Eigen::VectorXd formula =
          confidence_from_posterior(scenario.posterior_row(xi), s);
      for (int y = 1; y <= kernel.num_classes(); ++y) {
        // Bayes on the finite tables: p(y | x, s).
        const double bayes = scenario.joint(xi, y) * kernel.value(xi, s, y) / pxs;
        const double dev = std::abs(bayes - formula(y - 1));
        result.max_deviation = std::max(result.max_deviation, dev);
        if (dev > tolerance) {
          result.status = CheckStatus::fail;
          if (result.witness.empty()) result.witness = cell_name(xi, s, y);
        }
      }
    }
  }
  return result;
}

CheckResult check_risk_rewrite(const std::string& name, const KernelTable& kernel,
                               const DiscreteScenario& scenario, std::uint64_t seed, int draws,
                               double tolerance) {
  CheckResult result;
  result.name = name;
  result.claim = "expected candidate-weighted loss under p(x,s) equals the classification risk";
  Rng rng(mix64(seed));
  for (int draw = 0; draw < draws; ++draw) {
    const Eigen::MatrixXd losses = loss_table(scenario, rng);
    const double direct = classification_risk(scenario, losses);

    KahanSum rewritten;
    for (Eigen::Index xi = 0; xi < scenario.num_points(); ++xi)
      for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
        const double pxs = kernel.joint_with_set(scenario, xi, s);
        if (pxs <= 0.0) continue;
        const Eigen::VectorXd conf = confidence_from_posterior(scenario.posterior_row(xi), s);
        KahanSum inner;
        for (int j : s.members()) inner.add(conf(j - 1) * losses(xi, j - 1));
        rewritten.add(pxs * inner.value());
      }

    const double dev = std::abs(rewritten.value() - direct);
    result.max_deviation = std::max(result.max_deviation, dev);
    if (dev > tolerance) {
      result.status = CheckStatus::fail;
      if (result.witness.empty())
        result.witness = "score draw " + std::to_string(draw) + ": |" +
                         std::to_string(rewritten.value()) + " - " + std::to_string(direct) + "|";
    }
  }
  return result;
}

CheckResult check_estimator_unbiasedness(const std::string& name, const KernelTable& kernel,
                                         const DiscreteScenario& scenario, EstimatorKind kind,
                                         std::uint64_t seed, int draws, double tolerance,
                                         bool informational) {
  CheckResult result;
  result.name = name;
  result.claim = std::string("expected ") + estimator_name(kind) +
                 " contribution equals the classification risk";
  Rng rng(mix64(seed));
  for (int draw = 0; draw < draws; ++draw) {
    const Eigen::MatrixXd losses = loss_table(scenario, rng);
    const double direct = classification_risk(scenario, losses);

    KahanSum expectation;
    for (Eigen::Index xi = 0; xi < scenario.num_points(); ++xi)
      for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
        const double pxs = kernel.joint_with_set(scenario, xi, s);
        if (pxs <= 0.0) continue;
        expectation.add(pxs * cell_contribution(kind, scenario, xi, s, losses));
      }

    const double dev = std::abs(expectation.value() - direct);
    result.max_deviation = std::max(result.max_deviation, dev);
    if (dev > tolerance && !informational) {
      result.status = CheckStatus::fail;
      if (result.witness.empty())
        result.witness = "score draw " + std::to_string(draw) + ": expectation " +
                         std::to_string(expectation.value()) + " vs risk " +
                         std::to_string(direct);
    }
  }
  if (informational) {
    result.status = CheckStatus::info;
    result.note = "measured bias " + std::to_string(result.max_deviation);
  }
  return result;
}

CheckResult check_kernel_equality(const std::string& name, const std::string& claim,
                                  const KernelTable& a, const KernelTable& b, double tolerance) {
  CheckResult result;
  result.name = name;
  result.claim = claim;
  for (Eigen::Index xi = 0; xi < a.num_points(); ++xi)
    for (const CandidateSet& s : CandidateSetRange(a.label_space()))
      for (int y = 1; y <= a.num_classes(); ++y) {
        const double dev = std::abs(a.value(xi, s, y) - b.value(xi, s, y));
        result.max_deviation = std::max(result.max_deviation, dev);
        if (dev > tolerance && result.witness.empty()) {
          result.status = CheckStatus::fail;
          result.witness = cell_name(xi, s, y);
        }
        if (dev > tolerance) result.status = CheckStatus::fail;
      }
  return result;
}

CheckResult check_kernel_difference(const std::string& name, const std::string& claim,
                                    const KernelTable& a, const KernelTable& b, double at_least) {
  CheckResult result;
  result.name = name;
  result.claim = claim;
  for (Eigen::Index xi = 0; xi < a.num_points(); ++xi)
    for (const CandidateSet& s : CandidateSetRange(a.label_space()))
      for (int y = 1; y <= a.num_classes(); ++y) {
        const double dev = std::abs(a.value(xi, s, y) - b.value(xi, s, y));
        if (dev >= at_least) {
          result.max_deviation = dev;
          result.note = "kernels separate at " + cell_name(xi, s, y);
          return result;
        }
      }
  result.status = CheckStatus::fail;
  result.witness = "kernels coincide on every cell";
  return result;
}

CheckResult check_x_independence(const std::string& name, const KernelTable& kernel,
                                 double tolerance) {
  CheckResult result;
  result.name = name;
  result.claim = "kernel cells are constant across points";
  for (const CandidateSet& s : CandidateSetRange(kernel.label_space()))
    for (int y = 1; y <= kernel.num_classes(); ++y) {
      const double first = kernel.value(0, s, y);
      for (Eigen::Index xi = 1; xi < kernel.num_points(); ++xi) {
        const double dev = std::abs(kernel.value(xi, s, y) - first);
        result.max_deviation = std::max(result.max_deviation, dev);
        if (dev > tolerance) {
          result.status = CheckStatus::fail;
          if (result.witness.empty()) result.witness = cell_name(xi, s, y);
        }
      }
    }
  return result;
}

CheckResult check_size_asymmetry(const std::string& name, const KernelTable& kernel,
                                 const DiscreteScenario& scenario) {
  CheckResult result;
  result.name = name;
  result.claim = "set function is not determined by the set size";
  (void)scenario;
  std::map<int, std::pair<double, std::string>> by_size;
  for (const CandidateSet& s : CandidateSetRange(kernel.label_space())) {
    const int y = s.members().front();
    const double c = kernel.value(0, s, y);
    const auto it = by_size.find(s.size());
    if (it == by_size.end()) {
      by_size[s.size()] = {c, s.to_string()};
      continue;
    }
    const double dev = std::abs(c - it->second.first);
    if (dev > 1e-9) {
      result.max_deviation = dev;
      result.note = "C(" + it->second.second + ") != C(" + s.to_string() + ")";
      return result;
    }
  }
  result.status = CheckStatus::fail;
  result.witness = "set function collapses to a size law";
  return result;
}

CheckResult invert(const std::string& name, const std::string& claim, CheckResult inner) {
  CheckResult result;
  result.name = name;
  result.claim = claim;
  result.max_deviation = inner.max_deviation;
  if (inner.status == CheckStatus::fail) {
    result.note = "violation detected as required: " + inner.witness;
  } else {
    result.status = CheckStatus::fail;
    result.witness = "expected the inner check to fail, but it passed";
  }
  return result;
}

}  // namespace ppl::oracle

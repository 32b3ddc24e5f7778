#pragma once

#include "estimators/risk.hpp"
#include "oracle/report.hpp"
#include "oracle/scenario.hpp"

namespace ppl::oracle {

// Fixture kernels -----------------------------------------------------------

// Factorized kernel whose set function varies with the point: each point gets
// its own complementary-size skew. Proper, but not expressible without x.
KernelTable x_dependent_proper_kernel(const DiscreteScenario& scenario);

// Factorized, x-independent kernel whose set function is NOT determined by
// the set size: a uniform kernel nudged on {1}, {2} and {1,2} in a way that
// keeps every row normalized.
KernelTable size_asymmetric_kernel(const DiscreteScenario& scenario);

// Checks ---------------------------------------------------------------------
// Each check computes its own verdict; the suite layers expectations (e.g.
// negative fixtures must fail) via invert().

// Kernel factorizes as C(x,s) * 1{y in s}: zero outside the set, constant
// across the candidates inside.
CheckResult check_properness(const std::string& name, const KernelTable& kernel,
                             const DiscreteScenario& scenario, double tolerance = 1e-12);

// Equivalence of three statements about an x-free set function: the kernel
// has the form C(s) * 1{y in s} iff it is conditionally independent of x
// given y and its x-marginal has that same form.
CheckResult check_conditional_independence_equivalence(const std::string& name,
                                                       const KernelTable& kernel,
                                                       const DiscreteScenario& scenario,
                                                       double tolerance = 1e-12);

// The uniform-over-sets kernel's size law: counting sets of each size around
// a fixed candidate gives binom(K-1, k-1) over 2^(K-1)-1, integer-exact, and
// the kernel coincides with the multi-complementary kernel built from that
// law.
CheckResult check_uniform_size_law(const std::string& name, int num_classes,
                                   const DiscreteScenario& scenario);

// Candidate confidences from Bayes on the joint table equal the renormalized
// class posterior on every positive-probability (x, s) cell.
CheckResult check_confidence_identity(const std::string& name, const KernelTable& kernel,
                                      const DiscreteScenario& scenario,
                                      double tolerance = 1e-12);

// The expected candidate-weighted loss under p(x,s) equals the plain
// classification risk, for `draws` random score assignments.
CheckResult check_risk_rewrite(const std::string& name, const KernelTable& kernel,
                               const DiscreteScenario& scenario, std::uint64_t seed,
                               int draws = 20, double tolerance = 1e-12);

// Expectation of a per-example estimator contribution over the enumerated
// (x,s) law versus the classification risk. Contributions are produced by
// the production estimator code on single-example datasets.
CheckResult check_estimator_unbiasedness(const std::string& name, const KernelTable& kernel,
                                         const DiscreteScenario& scenario, EstimatorKind kind,
                                         std::uint64_t seed, int draws = 5,
                                         double tolerance = 1e-12, bool informational = false);

// Cell-wise kernel identity / separation.
CheckResult check_kernel_equality(const std::string& name, const std::string& claim,
                                  const KernelTable& a, const KernelTable& b,
                                  double tolerance = 1e-14);
CheckResult check_kernel_difference(const std::string& name, const std::string& claim,
                                    const KernelTable& a, const KernelTable& b,
                                    double at_least = 1e-9);

// Kernel value is constant across points for every (s, y); fails with a
// witness when the set function genuinely depends on x.
CheckResult check_x_independence(const std::string& name, const KernelTable& kernel,
                                 double tolerance = 1e-12);

// The set function is not determined by the set size: finds two equal-size
// sets with different extracted C. Passes when such a pair exists.
CheckResult check_size_asymmetry(const std::string& name, const KernelTable& kernel,
                                 const DiscreteScenario& scenario);

// Expectation inversion for negative fixtures: passes iff `inner` failed.
CheckResult invert(const std::string& name, const std::string& claim, CheckResult inner);

}  // namespace ppl::oracle

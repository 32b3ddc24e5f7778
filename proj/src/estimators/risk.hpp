#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "estimators/confidence.hpp"

namespace ppl {

enum class EstimatorKind { supervised, ppl, cl, mcl, cc };

const char* estimator_name(EstimatorKind k);
EstimatorKind estimator_from_name(const std::string& name);

struct RiskEstimate {
  double value = 0.0;
  EstimatorKind kind = EstimatorKind::ppl;
  Eigen::Index n = 0;
  std::vector<double> contributions;  // per example, kept when requested

  double recompute_mean() const {
    double total = 0.0;
    for (double c : contributions) total += c;
    return contributions.empty() ? 0.0 : total / static_cast<double>(contributions.size());
  }
};

// All estimators consume a precomputed loss table L(i, j) = L(f(x_i), j) of
// shape n x K, so the same code serves softmax models and analytic oracles.

// Candidate-confidence weighted empirical risk:
//   (1/n) sum_i sum_{j in s_i} r_ij * L(i, j).
RiskEstimate candidate_weighted_risk(const Dataset& data, const ConfidenceMatrix& confidences,
                                     const Eigen::MatrixXd& losses,
                                     bool keep_contributions = false);

// Complementary-label estimator; requires |s| = K-1 everywhere:
//   (1/n) sum_i [ sum_{k != bar_y} L(i, k) - (K-2) * L(i, bar_y) ].
RiskEstimate complementary_risk(const Dataset& data, const Eigen::MatrixXd& losses,
                                bool keep_contributions = false);

// Multi-complementary estimator over the complement sets bar_s = Y \ s:
//   (1/n) sum_i [ sum_{y in s} L - ((K-1-|bar_s|)/|bar_s|) * sum_{y in bar_s} L ].
RiskEstimate multi_complementary_risk(const Dataset& data, const Eigen::MatrixXd& losses,
                                      bool keep_contributions = false);

// Uniform-set estimator, literal form: every class participates and the
// whole sum carries a 1/2 factor:
//   (1/2n) sum_i sum_{j=1..K} p(j|x_i) / (sum_{k in s_i} p(k|x_i)) * L(i, j).
// literal_form = false instead restricts j to the candidate set without the
// 1/2 factor, which reproduces the candidate-weighted estimator.
RiskEstimate uniform_set_risk(const Dataset& data, const Eigen::MatrixXd& posterior,
                              const Eigen::MatrixXd& losses, bool literal_form = true,
                              bool keep_contributions = false);

}  // namespace ppl

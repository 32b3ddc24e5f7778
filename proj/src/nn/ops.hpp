#pragma once

#include <Eigen/Core>
#include <utility>

namespace ppl {

// Row-wise stable softmax: max-subtracted, rows sum to 1, entries > 0.
Eigen::MatrixXd softmax_posterior(const Eigen::MatrixXd& scores);

// Row-wise log-softmax via the same max-subtraction.
Eigen::MatrixXd log_softmax(const Eigen::MatrixXd& scores);

struct LossAndGrad {
  double loss = 0.0;              // mean over the batch
  Eigen::MatrixXd grad_scores;    // d loss / d scores, same shape as scores
};

// Candidate-weighted cross-entropy: per example sum_j w_j * (-log softmax_j)
// where each weight row is nonnegative and sums to 1 (weights live on the
// example's candidate set; zeros elsewhere are the caller's contract).
// Gradient per example is (softmax - w) / batch.
LossAndGrad weighted_cross_entropy(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& weights);

// Arbitrary linear combination of per-class cross-entropy terms:
// per example sum_j c_j * (-log softmax_j) with unconstrained (possibly
// negative) coefficients. Gradient per example: (sum_j c_j) * softmax - c.
// The complementary-label estimators train through this form.
LossAndGrad cross_entropy_combination(const Eigen::MatrixXd& scores,
                                      const Eigen::MatrixXd& coefficients);

}  // namespace ppl

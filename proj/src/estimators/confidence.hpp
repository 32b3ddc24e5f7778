#pragma once

#include <Eigen/Core>

#include "core/dataset.hpp"

namespace ppl {

// Restriction of a class posterior to a candidate set, renormalized:
// r_j = p_j / sum_{k in s} p_k for j in s, zero outside. Posterior entries
// must make the candidate mass positive; softmax outputs always do.
Eigen::VectorXd confidence_from_posterior(const Eigen::VectorXd& posterior_row,
                                          const CandidateSet& candidates);

// Per-example candidate-label confidences for a dataset, one row per example.
// Rows are nonnegative, vanish outside the candidate set, and sum to 1.
class ConfidenceMatrix {
 public:
  // Uniform over each candidate set; the training loop's starting state.
  static ConfidenceMatrix uniform(const Dataset& data);

  // Rows derived from a full posterior matrix (n x K).
  static ConfidenceMatrix from_posterior(const Dataset& data, const Eigen::MatrixXd& posterior);

  const Eigen::MatrixXd& rows() const { return rows_; }
  Eigen::Index size() const { return rows_.rows(); }
  int num_classes() const { return static_cast<int>(rows_.cols()); }

  int epoch_stamp() const { return epoch_; }
  void stamp(int epoch) { epoch_ = epoch; }

  // Checks the row invariants against the owning dataset's candidate sets;
  // throws on violation. Cheap enough to run once per epoch while debugging.
  void validate(const Dataset& data, double tolerance = 1e-10) const;

  double mean_max_confidence() const;
  // Fraction of labeled examples whose highest-confidence candidate is the
  // true label (lowest index wins ties).
  double argmax_agreement(const Dataset& data) const;

 private:
  explicit ConfidenceMatrix(Eigen::MatrixXd rows) : rows_(std::move(rows)) {}
  Eigen::MatrixXd rows_;
  int epoch_ = 0;
};

}  // namespace ppl

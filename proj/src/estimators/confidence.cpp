#include "estimators/confidence.hpp"

#include <cmath>

namespace ppl {

Eigen::VectorXd confidence_from_posterior(const Eigen::VectorXd& posterior_row,
                                          const CandidateSet& candidates) {
  if (static_cast<int>(posterior_row.size()) != candidates.num_classes())
    fail(errc::dimension_mismatch, "posterior length differs from K");
  double denom = 0.0;
  for (int c : candidates.members()) denom += posterior_row(c - 1);
  if (!(denom >= 1e-300))
    fail(errc::degenerate_denominator,
         "posterior mass on candidate set " + candidates.to_string() + " vanishes");
  Eigen::VectorXd r = Eigen::VectorXd::Zero(posterior_row.size());
  for (int c : candidates.members()) r(c - 1) = posterior_row(c - 1) / denom;
  return r;
}

ConfidenceMatrix ConfidenceMatrix::uniform(const Dataset& data) {
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(data.size(), data.num_classes());
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const auto members = data.candidates(i).members();
    const double w = 1.0 / static_cast<double>(members.size());
    for (int c : members) rows(i, c - 1) = w;
  }
  return ConfidenceMatrix(std::move(rows));
}

ConfidenceMatrix ConfidenceMatrix::from_posterior(const Dataset& data,
                                                  const Eigen::MatrixXd& posterior) {
  if (posterior.rows() != data.size() || posterior.cols() != data.num_classes())
    fail(errc::dimension_mismatch, "posterior matrix shape mismatch");
  Eigen::MatrixXd rows(data.size(), data.num_classes());
  for (Eigen::Index i = 0; i < data.size(); ++i)
    rows.row(i) = confidence_from_posterior(posterior.row(i), data.candidates(i)).transpose();
  return ConfidenceMatrix(std::move(rows));
}

void ConfidenceMatrix::validate(const Dataset& data, double tolerance) const {
  if (rows_.rows() != data.size() || rows_.cols() != data.num_classes())
    fail(errc::dimension_mismatch, "confidence matrix shape mismatch");
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < rows_.cols(); ++j) {
      const double r = rows_(i, j);
      if (r < 0.0)
        fail(errc::bad_weights, "negative confidence at example " + std::to_string(i));
      if (r != 0.0 && !data.candidates(i).contains(static_cast<int>(j) + 1))
        fail(errc::bad_weights,
             "confidence outside candidate set at example " + std::to_string(i));
      sum += r;
    }
    if (std::abs(sum - 1.0) > tolerance)
      fail(errc::bad_weights, "confidence row " + std::to_string(i) + " sums to " +
                                  std::to_string(sum));
  }
}

double ConfidenceMatrix::mean_max_confidence() const {
  if (rows_.rows() == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) total += rows_.row(i).maxCoeff();
  return total / static_cast<double>(rows_.rows());
}

double ConfidenceMatrix::argmax_agreement(const Dataset& data) const {
  Eigen::Index labeled = 0;
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    if (!data.label(i)) continue;
    ++labeled;
    int best = 0;
    for (Eigen::Index j = 1; j < rows_.cols(); ++j)
      if (rows_(i, j) > rows_(i, best)) best = static_cast<int>(j);
    if (best + 1 == *data.label(i)) ++hits;
  }
  return labeled == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(labeled);
}

}  // namespace ppl

#include "nn/ops.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ppl {

Eigen::MatrixXd softmax_posterior(const Eigen::MatrixXd& scores) {
  Eigen::MatrixXd out(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double m = scores.row(i).maxCoeff();
    out.row(i) = (scores.row(i).array() - m).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

Eigen::MatrixXd log_softmax(const Eigen::MatrixXd& scores) {
  Eigen::MatrixXd out(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double m = scores.row(i).maxCoeff();
    const Eigen::ArrayXd shifted = scores.row(i).array() - m;
    out.row(i) = shifted - std::log(shifted.exp().sum());
  }
  return out;
}

LossAndGrad weighted_cross_entropy(const Eigen::MatrixXd& scores,
                                   const Eigen::MatrixXd& weights) {
  if (scores.rows() != weights.rows() || scores.cols() != weights.cols())
    fail(errc::dimension_mismatch, "scores and weights must agree in shape");
  for (Eigen::Index i = 0; i < weights.rows(); ++i) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < weights.cols(); ++j) {
      if (weights(i, j) < 0.0)
        fail(errc::bad_weights, "negative weight at row " + std::to_string(i));
      row_sum += weights(i, j);
    }
    if (std::abs(row_sum - 1.0) > 1e-8)
      fail(errc::bad_weights,
           "weight row " + std::to_string(i) + " sums to " + std::to_string(row_sum));
  }

  const auto batch = static_cast<double>(scores.rows());
  const Eigen::MatrixXd logp = log_softmax(scores);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i)
    for (Eigen::Index j = 0; j < scores.cols(); ++j)
      if (weights(i, j) != 0.0) loss -= weights(i, j) * logp(i, j);
  LossAndGrad out;
  out.loss = loss / batch;
  out.grad_scores = (softmax_posterior(scores) - weights) / batch;
  return out;
}

LossAndGrad cross_entropy_combination(const Eigen::MatrixXd& scores,
                                      const Eigen::MatrixXd& coefficients) {
  if (scores.rows() != coefficients.rows() || scores.cols() != coefficients.cols())
    fail(errc::dimension_mismatch, "scores and coefficients must agree in shape");
  const auto batch = static_cast<double>(scores.rows());
  const Eigen::MatrixXd logp = log_softmax(scores);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i)
    for (Eigen::Index j = 0; j < scores.cols(); ++j)
      if (coefficients(i, j) != 0.0) loss -= coefficients(i, j) * logp(i, j);

  const Eigen::MatrixXd probs = softmax_posterior(scores);
  const Eigen::VectorXd row_totals = coefficients.rowwise().sum();
  LossAndGrad out;
  out.loss = loss / batch;
  out.grad_scores = (probs.array().colwise() * row_totals.array()).matrix() - coefficients;
  out.grad_scores /= batch;
  return out;
}

}  // namespace ppl

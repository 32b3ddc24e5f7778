#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <vector>

#include "nn/model.hpp"

namespace ppl::test {

// Central-difference gradient oracle. `loss_of` must evaluate the scalar
// objective at the model's current parameters without touching them.
struct GradientCheckResult {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
};

inline GradientCheckResult finite_difference_check(
    ppl::DifferentiableModel& model, const std::vector<double>& analytic,
    const std::function<double()>& loss_of, double step = 1e-5) {
  const std::vector<double> theta = model.flat_parameters();
  GradientCheckResult result;
  for (std::size_t p = 0; p < theta.size(); ++p) {
    std::vector<double> bumped = theta;
    bumped[p] = theta[p] + step;
    model.set_flat_parameters(bumped);
    const double up = loss_of();
    bumped[p] = theta[p] - step;
    model.set_flat_parameters(bumped);
    const double down = loss_of();
    const double numeric = (up - down) / (2.0 * step);

    const double a = analytic[p];
    const double scale = std::max(std::abs(a), std::abs(numeric));
    if (scale >= 1e-4) {
      result.max_relative_error = std::max(result.max_relative_error, std::abs(a - numeric) / scale);
    } else {
      result.max_absolute_error = std::max(result.max_absolute_error, std::abs(a - numeric));
    }
  }
  model.set_flat_parameters(theta);
  return result;
}

// Hidden-layer pre-activations of `model` at `batch`; cases whose units sit
// within `margin` of the rectifier kink are rejected so the central
// difference never straddles it.
inline bool safely_away_from_kinks(const ppl::DifferentiableModel& model,
                                   const Eigen::MatrixXd& batch, double margin = 1e-3) {
  Eigen::MatrixXd a = batch;
  const auto& weights = model.weights();
  const auto& biases = model.biases();
  for (std::size_t l = 0; l + 1 < weights.size(); ++l) {
    Eigen::MatrixXd z = a * weights[l].transpose();
    z.rowwise() += biases[l].transpose();
    if (z.array().abs().minCoeff() < margin) return false;
    a = z.cwiseMax(0.0);
  }
  return true;
}

}  // namespace ppl::test

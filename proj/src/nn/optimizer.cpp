#include "nn/optimizer.hpp"

#include "core/error.hpp"

namespace ppl {

SgdOptimizer::SgdOptimizer(double learning_rate, double momentum, double weight_decay)
    : lr_(learning_rate), momentum_(momentum), weight_decay_(weight_decay) {
  if (!(lr_ > 0.0)) fail(errc::invalid_argument, "learning rate must be positive");
  if (momentum_ < 0.0 || momentum_ >= 1.0)
    fail(errc::invalid_argument, "momentum must lie in [0,1)");
  if (weight_decay_ < 0.0) fail(errc::invalid_argument, "weight decay must be nonnegative");
}

void SgdOptimizer::step(DifferentiableModel& model, const Gradients& grads) {
  auto& weights = model.weights();
  auto& biases = model.biases();
  if (grads.weights.size() != weights.size() || grads.biases.size() != biases.size())
    fail(errc::dimension_mismatch, "gradient layer count mismatch");

  if (vel_weights_.empty()) {
    for (const auto& w : weights) vel_weights_.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    for (const auto& b : biases) vel_biases_.push_back(Eigen::VectorXd::Zero(b.size()));
  }

  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (grads.weights[l].rows() != weights[l].rows() ||
        grads.weights[l].cols() != weights[l].cols() ||
        grads.biases[l].size() != biases[l].size())
      fail(errc::dimension_mismatch, "gradient shape mismatch at layer " + std::to_string(l));
    if (!grads.weights[l].allFinite() || !grads.biases[l].allFinite())
      fail(errc::non_finite, "non-finite gradient at layer " + std::to_string(l));

    vel_weights_[l] = momentum_ * vel_weights_[l] + grads.weights[l] + weight_decay_ * weights[l];
    vel_biases_[l] = momentum_ * vel_biases_[l] + grads.biases[l] + weight_decay_ * biases[l];
    weights[l] -= lr_ * vel_weights_[l];
    biases[l] -= lr_ * vel_biases_[l];
  }

  if (!model.parameters_finite()) fail(errc::non_finite, "parameters left finite range");
}

}  // namespace ppl

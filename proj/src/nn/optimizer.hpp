#pragma once

#include "nn/model.hpp"

namespace ppl {

// SGD with classical momentum and decoupled-into-gradient l2 decay:
//   v <- momentum * v + g + weight_decay * theta
//   theta <- theta - lr * v
class SgdOptimizer {
 public:
  SgdOptimizer(double learning_rate, double momentum, double weight_decay);

  void step(DifferentiableModel& model, const Gradients& grads);

  double learning_rate() const { return lr_; }
  double momentum() const { return momentum_; }
  double weight_decay() const { return weight_decay_; }

 private:
  double lr_;
  double momentum_;
  double weight_decay_;
  std::vector<Eigen::MatrixXd> vel_weights_;
  std::vector<Eigen::VectorXd> vel_biases_;
};

}  // namespace ppl

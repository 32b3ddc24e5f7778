#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "core/dataset.hpp"
#include "core/rng.hpp"
#include "json.hpp"

namespace ppl {

// Mixture of isotropic Gaussians with one component per class. The class
// posterior is available in closed form, which is what makes the estimator
// and confidence identities testable against ground truth.
class SyntheticScenario {
 public:
  SyntheticScenario(std::vector<double> class_priors, Eigen::MatrixXd class_means,
                    double variance);

  // K classes at the corners radius*e_i of a d-dimensional simplex-like
  // layout (d >= K not required; means are placed on coordinate axes, and for
  // K=3, d=2 an equilateral triangle is used instead).
  static SyntheticScenario axis_gaussians(int num_classes, int dim, double radius,
                                          double variance);

  static SyntheticScenario from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  int num_classes() const { return static_cast<int>(priors_.size()); }
  Eigen::Index dim() const { return means_.cols(); }
  double variance() const { return variance_; }
  const std::vector<double>& priors() const { return priors_; }
  const Eigen::MatrixXd& means() const { return means_; }  // row per class

  // p(y | x) over 1..K, each entry in [0,1], summing to 1.
  Eigen::VectorXd posterior(const Eigen::VectorXd& x) const;

  Dataset sample(Eigen::Index n, std::uint64_t seed) const;

 private:
  std::vector<double> priors_;
  Eigen::MatrixXd means_;
  double variance_;
};

}  // namespace ppl

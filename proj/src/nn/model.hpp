#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ppl {

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;  // same shapes as the model's weights
  std::vector<Eigen::VectorXd> biases;
};

// Per-call activation storage so forward stays const and a frozen model can
// serve concurrent callers.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> layer_inputs;  // [0] is the batch itself
};

// Fully connected scorer f: R^d -> R^K, rectifier activations on hidden
// layers, none on the output. Batches are row-major (one example per row).
class DifferentiableModel {
 public:
  // layer_sizes = {d, hidden..., K}. Weights start Glorot-uniform
  // (+-sqrt(6/(fan_in+fan_out))), biases at zero, all driven by `seed`.
  DifferentiableModel(std::vector<int> layer_sizes, std::uint64_t seed);

  static DifferentiableModel linear(int input_dim, int num_classes, std::uint64_t seed) {
    return DifferentiableModel({input_dim, num_classes}, seed);
  }
  static DifferentiableModel mlp(int input_dim, const std::vector<int>& hidden, int num_classes,
                                 std::uint64_t seed) {
    std::vector<int> sizes{input_dim};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(num_classes);
    return DifferentiableModel(std::move(sizes), seed);
  }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& batch, ForwardCache* cache = nullptr) const;
  Gradients backward(const ForwardCache& cache, const Eigen::MatrixXd& grad_scores) const;

  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return sizes_; }
  std::uint64_t seed() const { return seed_; }

  std::vector<Eigen::MatrixXd>& weights() { return weights_; }
  std::vector<Eigen::VectorXd>& biases() { return biases_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

  bool parameters_finite() const;
  std::size_t parameter_count() const;
  std::vector<double> flat_parameters() const;
  void set_flat_parameters(const std::vector<double>& flat);

  // Checkpoint: one JSON header line (architecture, K, d, seed, extras),
  // then the parameters as a raw little-endian float64 blob. Round-trips
  // bit-exactly.
  void save(const std::string& path, const nlohmann::json& extra = {}) const;
  static DifferentiableModel load(const std::string& path, nlohmann::json* extra_out = nullptr);

 private:
  std::vector<int> sizes_;
  std::vector<Eigen::MatrixXd> weights_;  // weights_[l] is (out x in)
  std::vector<Eigen::VectorXd> biases_;
  std::uint64_t seed_ = 0;
};

}  // namespace ppl

#include "nn/model.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "core/error.hpp"
#include "core/rng.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint blobs are little-endian float64");

namespace ppl {

DifferentiableModel::DifferentiableModel(std::vector<int> layer_sizes, std::uint64_t seed)
    : sizes_(std::move(layer_sizes)), seed_(seed) {
  if (sizes_.size() < 2) fail(errc::invalid_argument, "need at least input and output layers");
  for (int s : sizes_)
    if (s < 1) fail(errc::invalid_argument, "layer sizes must be positive");

  Rng rng(mix64(seed));
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int fan_in = sizes_[l];
    const int fan_out = sizes_[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.uniform(-limit, limit);
    weights_.push_back(std::move(w));
    biases_.push_back(Eigen::VectorXd::Zero(fan_out));
  }
}

Eigen::MatrixXd DifferentiableModel::forward(const Eigen::MatrixXd& batch,
                                             ForwardCache* cache) const {
  if (batch.cols() != input_dim())
    fail(errc::dimension_mismatch, "batch has dimension " + std::to_string(batch.cols()) +
                                       ", model expects " + std::to_string(input_dim()));
  if (cache) {
    cache->layer_inputs.clear();
    cache->layer_inputs.reserve(weights_.size());
  }
  Eigen::MatrixXd a = batch;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    if (cache) cache->layer_inputs.push_back(a);
    Eigen::MatrixXd z = a * weights_[l].transpose();
    z.rowwise() += biases_[l].transpose();
    a = (l + 1 < weights_.size()) ? z.cwiseMax(0.0) : std::move(z);
  }
  return a;
}

Gradients DifferentiableModel::backward(const ForwardCache& cache,
                                        const Eigen::MatrixXd& grad_scores) const {
  if (cache.layer_inputs.size() != weights_.size())
    fail(errc::invalid_argument, "stale forward cache");
  Gradients g;
  g.weights.resize(weights_.size());
  g.biases.resize(weights_.size());

  Eigen::MatrixXd delta = grad_scores;
  for (std::size_t l = weights_.size(); l-- > 0;) {
    g.weights[l] = delta.transpose() * cache.layer_inputs[l];
    g.biases[l] = delta.colwise().sum();
    if (l > 0) {
      delta = delta * weights_[l];
      // Rectifier gate: the cached input to layer l is the activation output
      // of layer l-1, so positive entries mark the pass-through units.
      delta = delta.cwiseProduct(
          (cache.layer_inputs[l].array() > 0.0).cast<double>().matrix());
    }
  }
  return g;
}

bool DifferentiableModel::parameters_finite() const {
  for (const auto& w : weights_)
    if (!w.allFinite()) return false;
  for (const auto& b : biases_)
    if (!b.allFinite()) return false;
  return true;
}

std::size_t DifferentiableModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& w : weights_) n += static_cast<std::size_t>(w.size());
  for (const auto& b : biases_) n += static_cast<std::size_t>(b.size());
  return n;
}

std::vector<double> DifferentiableModel::flat_parameters() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r)
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) flat.push_back(weights_[l](r, c));
    for (Eigen::Index r = 0; r < biases_[l].size(); ++r) flat.push_back(biases_[l](r));
  }
  return flat;
}

void DifferentiableModel::set_flat_parameters(const std::vector<double>& flat) {
  if (flat.size() != parameter_count())
    fail(errc::dimension_mismatch, "parameter blob size mismatch");
  std::size_t idx = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r)
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) weights_[l](r, c) = flat[idx++];
    for (Eigen::Index r = 0; r < biases_[l].size(); ++r) biases_[l](r) = flat[idx++];
  }
}

void DifferentiableModel::save(const std::string& path, const nlohmann::json& extra) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot write " + path);
  nlohmann::json header;
  header["layer_sizes"] = sizes_;
  header["K"] = output_dim();
  header["d"] = input_dim();
  header["seed"] = seed_;
  header["params"] = parameter_count();
  header["dtype"] = "f64le";
  if (!extra.is_null() && !extra.empty()) header["extra"] = extra;
  out << header.dump() << '\n';
  const std::vector<double> flat = flat_parameters();
  out.write(reinterpret_cast<const char*>(flat.data()),
            static_cast<std::streamsize>(flat.size() * sizeof(double)));
  if (!out) fail(errc::io_error, "write failed for " + path);
}

DifferentiableModel DifferentiableModel::load(const std::string& path,
                                              nlohmann::json* extra_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(errc::truncated_file, path + ": missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, path + ": bad header: " + e.what());
  }
  DifferentiableModel model(header.at("layer_sizes").get<std::vector<int>>(),
                            header.at("seed").get<std::uint64_t>());
  std::vector<double> flat(header.at("params").get<std::size_t>());
  in.read(reinterpret_cast<char*>(flat.data()),
          static_cast<std::streamsize>(flat.size() * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != flat.size() * sizeof(double))
    fail(errc::truncated_file, path + ": parameter blob cut short");
  model.set_flat_parameters(flat);
  if (extra_out) *extra_out = header.value("extra", nlohmann::json::object());
  return model;
}

}  // namespace ppl

#include "data/synthetic.hpp"

#include <cmath>

#include "core/discrete_distribution.hpp"

namespace ppl {

SyntheticScenario::SyntheticScenario(std::vector<double> class_priors, Eigen::MatrixXd class_means,
                                     double variance)
    : priors_(std::move(class_priors)), means_(std::move(class_means)), variance_(variance) {
  if (priors_.size() < 3) fail(errc::invalid_argument, "need at least 3 classes");
  if (means_.rows() != static_cast<Eigen::Index>(priors_.size()))
    fail(errc::count_mismatch, "one mean row per class required");
  if (!(variance_ > 0.0)) fail(errc::invalid_argument, "variance must be positive");
  KahanSum total;
  for (double p : priors_) {
    if (p < 0.0) fail(errc::invalid_argument, "negative prior");
    total.add(p);
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    fail(errc::normalization_failure, "priors sum to " + std::to_string(total.value()));
}

SyntheticScenario SyntheticScenario::axis_gaussians(int num_classes, int dim, double radius,
                                                    double variance) {
  if (num_classes == 3 && dim == 2) {
    Eigen::MatrixXd means(3, 2);
    for (int c = 0; c < 3; ++c) {
      const double angle = 2.0 * M_PI * c / 3.0;
      means(c, 0) = radius * std::cos(angle);
      means(c, 1) = radius * std::sin(angle);
    }
    return SyntheticScenario(std::vector<double>(3, 1.0 / 3), std::move(means), variance);
  }
  if (dim < num_classes)
    fail(errc::invalid_argument, "axis layout needs dim >= K (except the K=3, d=2 triangle)");
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(num_classes, dim);
  for (int c = 0; c < num_classes; ++c) means(c, c) = radius;
  return SyntheticScenario(std::vector<double>(static_cast<std::size_t>(num_classes),
                                               1.0 / num_classes),
                           std::move(means), variance);
}

SyntheticScenario SyntheticScenario::from_json(const nlohmann::json& spec) {
  if (spec.contains("means")) {
    const auto rows = spec.at("means").get<std::vector<std::vector<double>>>();
    if (rows.empty()) fail(errc::parse_error, "empty means");
    Eigen::MatrixXd means(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size()) fail(errc::parse_error, "ragged means");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        means(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    std::vector<double> priors;
    if (spec.contains("priors"))
      priors = spec.at("priors").get<std::vector<double>>();
    else
      priors.assign(rows.size(), 1.0 / static_cast<double>(rows.size()));
    return SyntheticScenario(std::move(priors), std::move(means),
                             spec.value("variance", 1.0));
  }
  return axis_gaussians(spec.value("K", 3), spec.value("d", 2), spec.value("radius", 2.0),
                        spec.value("variance", 1.0));
}

nlohmann::json SyntheticScenario::to_json() const {
  std::vector<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < means_.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(means_.cols()));
    for (Eigen::Index j = 0; j < means_.cols(); ++j) row[static_cast<std::size_t>(j)] = means_(i, j);
    rows.push_back(std::move(row));
  }
  return {{"priors", priors_}, {"means", rows}, {"variance", variance_}};
}

Eigen::VectorXd SyntheticScenario::posterior(const Eigen::VectorXd& x) const {
  const int k = num_classes();
  Eigen::VectorXd logits(k);
  for (int c = 0; c < k; ++c) {
    const double sq = (x - means_.row(c).transpose()).squaredNorm();
    logits(c) = std::log(priors_[static_cast<std::size_t>(c)]) - sq / (2.0 * variance_);
  }
  const double m = logits.maxCoeff();
  Eigen::VectorXd p = (logits.array() - m).exp();
  p /= p.sum();
  return p;
}

Dataset SyntheticScenario::sample(Eigen::Index n, std::uint64_t seed) const {
  if (n < 1) fail(errc::invalid_argument, "need n >= 1");
  const int k = num_classes();
  const LabelSpace space(k);
  const double sigma = std::sqrt(variance_);

  Rng rng(mix64(seed));
  Eigen::MatrixXd features(n, dim());
  std::vector<std::optional<int>> labels;
  std::vector<CandidateSet> candidates;
  labels.reserve(static_cast<std::size_t>(n));
  candidates.reserve(static_cast<std::size_t>(n));

  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = rng.uniform();
    int y = k;
    double acc = 0.0;
    for (int c = 1; c <= k; ++c) {
      acc += priors_[static_cast<std::size_t>(c - 1)];
      if (u < acc) {
        y = c;
        break;
      }
    }
    for (Eigen::Index j = 0; j < dim(); ++j)
      features(i, j) = means_(y - 1, j) + sigma * rng.normal();
    labels.emplace_back(y);
    candidates.push_back(CandidateSet::singleton(y, space));
  }

  Dataset d(space, std::move(features), std::move(labels), std::move(candidates));
  d.set_provenance({{"source", "synthetic"}, {"scenario", to_json()}, {"seed", seed}});
  return d;
}

}  // namespace ppl

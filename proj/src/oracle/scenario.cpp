#include "oracle/scenario.hpp"

#include <cmath>

namespace ppl::oracle {

DiscreteScenario::DiscreteScenario(std::vector<std::vector<double>> points, Eigen::MatrixXd joint)
    : points_(std::move(points)), joint_(std::move(joint)), space_(static_cast<int>(joint_.cols())) {
  if (joint_.cols() > kMaxClasses)
    fail(errc::cap_exceeded, "scenarios are capped at K <= 6 for enumeration");
  if (static_cast<Eigen::Index>(points_.size()) != joint_.rows())
    fail(errc::count_mismatch, "one joint row per point required");
  KahanSum total;
  for (Eigen::Index i = 0; i < joint_.rows(); ++i)
    for (Eigen::Index j = 0; j < joint_.cols(); ++j) {
      if (joint_(i, j) < 0.0) fail(errc::invalid_argument, "negative joint probability");
      total.add(joint_(i, j));
    }
  if (std::abs(total.value() - 1.0) > 1e-12)
    fail(errc::normalization_failure,
         "joint sums to " + std::to_string(total.value()) + ", expected 1");
  marginal_ = joint_.rowwise().sum();
  for (Eigen::Index i = 0; i < marginal_.size(); ++i)
    if (!(marginal_(i) > 0.0)) fail(errc::invalid_argument, "point with zero probability");
}

DiscreteScenario DiscreteScenario::random(int num_classes, int num_points, std::uint64_t seed) {
  Rng rng(mix64(seed));
  std::vector<std::vector<double>> points;
  Eigen::MatrixXd joint(num_points, num_classes);
  double total = 0.0;
  for (int i = 0; i < num_points; ++i) {
    points.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
    for (int j = 0; j < num_classes; ++j) {
      joint(i, j) = 0.2 + rng.uniform();  // bounded away from zero
      total += joint(i, j);
    }
  }
  joint /= total;
  // The renormalization residual lands on the largest cell so the table sums
  // to 1 within the constructor's tolerance.
  KahanSum check;
  for (int i = 0; i < num_points; ++i)
    for (int j = 0; j < num_classes; ++j) check.add(joint(i, j));
  Eigen::Index bi, bj;
  joint.maxCoeff(&bi, &bj);
  joint(bi, bj) += 1.0 - check.value();
  return DiscreteScenario(std::move(points), std::move(joint));
}

KernelTable KernelTable::from_model(const GenerationModel& model,
                                    const DiscreteScenario& scenario) {
  if (model.num_classes() != scenario.num_classes())
    fail(errc::dimension_mismatch, "model and scenario disagree on K");
  return from_function(scenario, model.label_space(),
                       [&](Eigen::Index xi, const CandidateSet& s, int y) {
                         return model.conditional_probability(scenario.point(xi), y, s);
                       });
}

KernelTable KernelTable::from_function(const DiscreteScenario& scenario, const LabelSpace& space,
                                       const CellFn& fn) {
  KernelTable t(space, scenario.num_points());
  for (Eigen::Index xi = 0; xi < scenario.num_points(); ++xi)
    for (const CandidateSet& s : CandidateSetRange(space))
      for (int y = 1; y <= space.num_classes(); ++y) {
        const double p = fn(xi, s, y);
        if (p < 0.0 || !std::isfinite(p))
          fail(errc::invalid_argument, "kernel cells must be finite and nonnegative");
        t.table_[static_cast<std::size_t>(xi)][key(s, y)] = p;
      }
  return t;
}

double KernelTable::set_given_point(const DiscreteScenario& scenario, Eigen::Index xi,
                                    const CandidateSet& s) const {
  KahanSum sum;
  for (int y = 1; y <= num_classes(); ++y)
    sum.add(scenario.posterior(xi, y) * value(xi, s, y));
  return sum.value();
}

double KernelTable::joint_with_set(const DiscreteScenario& scenario, Eigen::Index xi,
                                   const CandidateSet& s) const {
  KahanSum sum;
  for (int y = 1; y <= num_classes(); ++y) sum.add(scenario.joint(xi, y) * value(xi, s, y));
  return sum.value();
}

double KernelTable::max_normalization_error() const {
  double worst = 0.0;
  for (Eigen::Index xi = 0; xi < num_points(); ++xi)
    for (int y = 1; y <= num_classes(); ++y) {
      KahanSum sum;
      for (const CandidateSet& s : CandidateSetRange(space_, y)) sum.add(value(xi, s, y));
      worst = std::max(worst, std::abs(sum.value() - 1.0));
    }
  return worst;
}

KernelTable KernelTable::perturb_cell(const CandidateSet& s, int y, double factor) const {
  if (!s.contains(y)) fail(errc::invalid_argument, "perturbed cell must have y in s");
  KernelTable out = *this;
  for (Eigen::Index xi = 0; xi < num_points(); ++xi) {
    auto& row = out.table_[static_cast<std::size_t>(xi)];
    row[key(s, y)] *= factor;
    KahanSum sum;
    for (const CandidateSet& t : CandidateSetRange(space_, y)) sum.add(row.at(key(t, y)));
    if (!(sum.value() > 0.0)) fail(errc::normalization_failure, "perturbation zeroed a row");
    for (const CandidateSet& t : CandidateSetRange(space_, y)) row[key(t, y)] /= sum.value();
  }
  return out;
}

}  // namespace ppl::oracle

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "core/candidate_set.hpp"
#include "core/discrete_distribution.hpp"
#include "genmodels/generation_model.hpp"

namespace ppl::oracle {

// A fully enumerable world: finitely many feature points with a joint
// probability table over points x classes. Expectations over it are finite
// sums, which turns distributional identities into machine-checkable
// equalities.
class DiscreteScenario {
 public:
  static constexpr int kMaxClasses = 6;

  DiscreteScenario(std::vector<std::vector<double>> points, Eigen::MatrixXd joint);

  // Strictly positive joint probabilities, seeded; posteriors never vanish.
  static DiscreteScenario random(int num_classes, int num_points, std::uint64_t seed);

  int num_classes() const { return static_cast<int>(joint_.cols()); }
  Eigen::Index num_points() const { return joint_.rows(); }
  const LabelSpace& label_space() const { return space_; }
  const std::vector<double>& point(Eigen::Index i) const {
    return points_[static_cast<std::size_t>(i)];
  }

  double joint(Eigen::Index xi, int y) const { return joint_(xi, y - 1); }
  double marginal_x(Eigen::Index xi) const { return marginal_(xi); }
  double posterior(Eigen::Index xi, int y) const { return joint_(xi, y - 1) / marginal_(xi); }

  Eigen::VectorXd posterior_row(Eigen::Index xi) const {
    return joint_.row(xi).transpose() / marginal_(xi);
  }

  double class_prior(int y) const { return joint_.col(y - 1).sum(); }

 private:
  std::vector<std::vector<double>> points_;
  Eigen::MatrixXd joint_;      // (points x K), sums to 1
  Eigen::VectorXd marginal_;   // p(x)
  LabelSpace space_;
};

// Dense table p(s | x, y) over every point, candidate set, and class of a
// scenario. Rows (x, y fixed) sum to 1 over the sets containing y.
class KernelTable {
 public:
  using CellFn =
      std::function<double(Eigen::Index xi, const CandidateSet& s, int y)>;

  static KernelTable from_model(const GenerationModel& model, const DiscreteScenario& scenario);
  static KernelTable from_function(const DiscreteScenario& scenario, const LabelSpace& space,
                                   const CellFn& fn);

  double value(Eigen::Index xi, const CandidateSet& s, int y) const {
    return table_[static_cast<std::size_t>(xi)].at(key(s, y));
  }

  int num_classes() const { return space_.num_classes(); }
  Eigen::Index num_points() const { return static_cast<Eigen::Index>(table_.size()); }
  const LabelSpace& label_space() const { return space_; }

  // p(s | x) = sum_y p(y|x) p(s|x,y).
  double set_given_point(const DiscreteScenario& scenario, Eigen::Index xi,
                         const CandidateSet& s) const;
  // p(x, s).
  double joint_with_set(const DiscreteScenario& scenario, Eigen::Index xi,
                        const CandidateSet& s) const;

  // Largest deviation of any (x, y) row sum from 1.
  double max_normalization_error() const;

  // Negative fixture: scales the value at one (s, y) cell on every point and
  // renormalizes the touched (x, y) rows, so the kernel stays a valid
  // conditional law but the probability now depends on which candidate is
  // the true label.
  KernelTable perturb_cell(const CandidateSet& s, int y, double factor) const;

 private:
  KernelTable(const LabelSpace& space, Eigen::Index points)
      : space_(space),
        table_(static_cast<std::size_t>(points)) {}

  static std::uint64_t key(const CandidateSet& s, int y) {
    return (s.mask() << 6) | static_cast<std::uint64_t>(y);
  }

  LabelSpace space_;
  // per point: (mask, y) -> probability
  std::vector<std::unordered_map<std::uint64_t, double>> table_;
};

}  // namespace ppl::oracle

#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "core/example.hpp"
#include "json.hpp"

namespace ppl {

// In-memory dataset, structure-of-arrays: one feature matrix (row per
// example) plus per-example labels and candidate sets. Provenance carries
// everything needed to regenerate the candidate sets bit-for-bit: source
// name, generation-model descriptor, corruption seed.
class Dataset {
 public:
  Dataset(LabelSpace space, Eigen::Index dim)
      : space_(space), features_(0, dim) {}

  Dataset(LabelSpace space, Eigen::MatrixXd features,
          std::vector<std::optional<int>> labels, std::vector<CandidateSet> candidates)
      : space_(space),
        features_(std::move(features)),
        labels_(std::move(labels)),
        candidates_(std::move(candidates)) {
    if (static_cast<Eigen::Index>(labels_.size()) != features_.rows() ||
        labels_.size() != candidates_.size())
      fail(errc::count_mismatch, "feature/label/candidate counts differ");
    for (std::size_t i = 0; i < labels_.size(); ++i) validate_row(i);
  }

  // Row-at-a-time growth; loaders with known sizes use the bulk constructor.
  void add(const Example& e) {
    if (static_cast<Eigen::Index>(e.features.size()) != features_.cols())
      fail(errc::dimension_mismatch,
           "example has dimension " + std::to_string(e.features.size()) + ", dataset declares " +
               std::to_string(features_.cols()));
    features_.conservativeResize(features_.rows() + 1, Eigen::NoChange);
    for (Eigen::Index j = 0; j < features_.cols(); ++j)
      features_(features_.rows() - 1, j) = e.features[static_cast<std::size_t>(j)];
    labels_.push_back(e.true_label);
    candidates_.push_back(e.candidates);
    validate_row(labels_.size() - 1);
  }

  Eigen::Index size() const { return features_.rows(); }
  Eigen::Index dim() const { return features_.cols(); }
  const LabelSpace& label_space() const { return space_; }
  int num_classes() const { return space_.num_classes(); }

  const Eigen::MatrixXd& features() const { return features_; }
  auto features_row(Eigen::Index i) const { return features_.row(i); }
  std::optional<int> label(Eigen::Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  const CandidateSet& candidates(Eigen::Index i) const {
    return candidates_[static_cast<std::size_t>(i)];
  }

  bool fully_labeled() const {
    for (const auto& l : labels_)
      if (!l) return false;
    return size() > 0;
  }

  double mean_candidate_size() const {
    if (candidates_.empty()) return 0.0;
    double total = 0.0;
    for (const auto& s : candidates_) total += s.size();
    return total / static_cast<double>(candidates_.size());
  }

  const nlohmann::json& provenance() const { return provenance_; }
  void set_provenance(nlohmann::json p) { provenance_ = std::move(p); }

  // Evaluation copies keep labels; this produces the honest weakly-supervised
  // view of the same data.
  Dataset without_labels() const {
    Dataset d(space_, features_,
              std::vector<std::optional<int>>(labels_.size(), std::nullopt), candidates_);
    d.provenance_ = provenance_;
    return d;
  }

  Dataset select(const std::vector<Eigen::Index>& rows) const {
    Eigen::MatrixXd f(static_cast<Eigen::Index>(rows.size()), features_.cols());
    std::vector<std::optional<int>> l;
    std::vector<CandidateSet> c;
    l.reserve(rows.size());
    c.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      f.row(static_cast<Eigen::Index>(i)) = features_.row(rows[i]);
      l.push_back(labels_[static_cast<std::size_t>(rows[i])]);
      c.push_back(candidates_[static_cast<std::size_t>(rows[i])]);
    }
    Dataset d(space_, std::move(f), std::move(l), std::move(c));
    d.provenance_ = provenance_;
    d.provenance_["reordered"] = true;  // row order no longer matches any source file
    return d;
  }

 private:
  void validate_row(std::size_t i) {
    const auto& s = candidates_[i];
    if (s.num_classes() != space_.num_classes())
      fail(errc::dimension_mismatch, "candidate set built for a different label space");
    const auto& l = labels_[i];
    if (l && !s.contains(*l))
      fail(errc::invalid_argument,
           "example " + std::to_string(i) + ": true label " + std::to_string(*l) +
               " missing from candidate set " + s.to_string());
  }

  LabelSpace space_;
  Eigen::MatrixXd features_;
  std::vector<std::optional<int>> labels_;
  std::vector<CandidateSet> candidates_;
  nlohmann::json provenance_ = nlohmann::json::object();
};

}  // namespace ppl

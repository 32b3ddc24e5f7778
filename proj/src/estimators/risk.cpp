#include "estimators/risk.hpp"

#include "core/discrete_distribution.hpp"

namespace ppl {

const char* estimator_name(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::supervised: return "supervised";
    case EstimatorKind::ppl: return "ppl";
    case EstimatorKind::cl: return "cl";
    case EstimatorKind::mcl: return "mcl";
    case EstimatorKind::cc: return "cc";
  }
  return "unknown";
}

EstimatorKind estimator_from_name(const std::string& name) {
  if (name == "supervised") return EstimatorKind::supervised;
  if (name == "ppl") return EstimatorKind::ppl;
  if (name == "cl") return EstimatorKind::cl;
  if (name == "mcl") return EstimatorKind::mcl;
  if (name == "cc" || name == "pcpl") return EstimatorKind::cc;
  fail(errc::invalid_argument, "unknown estimator '" + name + "'");
}

namespace {

void check_losses(const Dataset& data, const Eigen::MatrixXd& losses) {
  if (losses.rows() != data.size() || losses.cols() != data.num_classes())
    fail(errc::dimension_mismatch, "loss table must be n x K");
}

RiskEstimate finish(EstimatorKind kind, const Dataset& data, std::vector<double> contributions,
                    bool keep) {
  KahanSum total;
  for (double c : contributions) total.add(c);
  RiskEstimate est;
  est.kind = kind;
  est.n = data.size();
  est.value = data.size() == 0 ? 0.0 : total.value() / static_cast<double>(data.size());
  if (keep) est.contributions = std::move(contributions);
  return est;
}

}  // namespace

RiskEstimate candidate_weighted_risk(const Dataset& data, const ConfidenceMatrix& confidences,
                                     const Eigen::MatrixXd& losses, bool keep_contributions) {
  check_losses(data, losses);
  if (confidences.size() != data.size())
    fail(errc::dimension_mismatch, "confidence matrix does not cover the dataset");
  std::vector<double> contributions(static_cast<std::size_t>(data.size()));
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    double c = 0.0;
    for (int j : data.candidates(i).members()) c += confidences.rows()(i, j - 1) * losses(i, j - 1);
    contributions[static_cast<std::size_t>(i)] = c;
  }
  return finish(EstimatorKind::ppl, data, std::move(contributions), keep_contributions);
}

RiskEstimate complementary_risk(const Dataset& data, const Eigen::MatrixXd& losses,
                                bool keep_contributions) {
  check_losses(data, losses);
  const int k = data.num_classes();
  std::vector<double> contributions(static_cast<std::size_t>(data.size()));
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const CandidateSet& s = data.candidates(i);
    if (s.size() != k - 1)
      fail(errc::not_complementary, "example " + std::to_string(i) + " has |s| = " +
                                        std::to_string(s.size()) + ", expected K-1");
    const int bar = s.complement().members().front();
    double c = 0.0;
    for (int j = 1; j <= k; ++j)
      if (j != bar) c += losses(i, j - 1);
    c -= static_cast<double>(k - 2) * losses(i, bar - 1);
    contributions[static_cast<std::size_t>(i)] = c;
  }
  return finish(EstimatorKind::cl, data, std::move(contributions), keep_contributions);
}

RiskEstimate multi_complementary_risk(const Dataset& data, const Eigen::MatrixXd& losses,
                                      bool keep_contributions) {
  check_losses(data, losses);
  const int k = data.num_classes();
  std::vector<double> contributions(static_cast<std::size_t>(data.size()));
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const CandidateSet& s = data.candidates(i);
    const CandidateSet bar = s.complement();
    const double scale =
        static_cast<double>(k - 1 - bar.size()) / static_cast<double>(bar.size());
    double inside = 0.0;
    for (int j : s.members()) inside += losses(i, j - 1);
    double outside = 0.0;
    for (int j : bar.members()) outside += losses(i, j - 1);
    contributions[static_cast<std::size_t>(i)] = inside - scale * outside;
  }
  return finish(EstimatorKind::mcl, data, std::move(contributions), keep_contributions);
}

RiskEstimate uniform_set_risk(const Dataset& data, const Eigen::MatrixXd& posterior,
                              const Eigen::MatrixXd& losses, bool literal_form,
                              bool keep_contributions) {
  check_losses(data, losses);
  if (posterior.rows() != data.size() || posterior.cols() != data.num_classes())
    fail(errc::dimension_mismatch, "posterior matrix must be n x K");
  const int k = data.num_classes();
  std::vector<double> contributions(static_cast<std::size_t>(data.size()));
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    double denom = 0.0;
    for (int j : data.candidates(i).members()) denom += posterior(i, j - 1);
    if (!(denom >= 1e-300))
      fail(errc::degenerate_denominator,
           "posterior mass vanishes on candidate set of example " + std::to_string(i));
    double c = 0.0;
    if (literal_form) {
      for (int j = 1; j <= k; ++j) c += posterior(i, j - 1) / denom * losses(i, j - 1);
      c *= 0.5;
    } else {
      for (int j : data.candidates(i).members())
        c += posterior(i, j - 1) / denom * losses(i, j - 1);
    }
    contributions[static_cast<std::size_t>(i)] = c;
  }
  return finish(EstimatorKind::cc, data, std::move(contributions), keep_contributions);
}

}  // namespace ppl

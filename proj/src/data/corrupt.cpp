#include "data/corrupt.hpp"

#include <numeric>

namespace ppl {

Dataset corrupt(const Dataset& labeled, const GenerationModel& model, std::uint64_t seed) {
  if (!labeled.fully_labeled())
    fail(errc::missing_labels, "corruption needs true labels on every example");
  if (labeled.num_classes() != model.num_classes())
    fail(errc::dimension_mismatch, "dataset and generation model disagree on K");

  std::vector<std::optional<int>> labels;
  std::vector<CandidateSet> candidates;
  labels.reserve(static_cast<std::size_t>(labeled.size()));
  candidates.reserve(static_cast<std::size_t>(labeled.size()));

  std::vector<double> x(static_cast<std::size_t>(labeled.dim()));
  for (Eigen::Index i = 0; i < labeled.size(); ++i) {
    const int y = *labeled.label(i);
    for (Eigen::Index j = 0; j < labeled.dim(); ++j)
      x[static_cast<std::size_t>(j)] = labeled.features()(i, j);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    candidates.push_back(model.sample(x, y, rng));
    labels.emplace_back(y);
  }

  Dataset out(labeled.label_space(), labeled.features(), std::move(labels),
              std::move(candidates));
  nlohmann::json prov = labeled.provenance();
  prov["genmodel"] = model.descriptor(seed);
  prov["seed"] = seed;
  out.set_provenance(std::move(prov));
  return out;
}

std::pair<Dataset, Dataset> split_validation(const Dataset& data, double fraction,
                                             std::uint64_t seed) {
  if (!(fraction > 0.0) || !(fraction < 1.0))
    fail(errc::invalid_argument, "fraction must lie in (0,1)");
  const Eigen::Index n = data.size();
  const auto n_val =
      static_cast<Eigen::Index>(std::floor(static_cast<double>(n) * fraction));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0x9a11d));
  rng.shuffle(order);

  const std::vector<Eigen::Index> val_rows(order.begin(), order.begin() + n_val);
  const std::vector<Eigen::Index> train_rows(order.begin() + n_val, order.end());

  Dataset train = data.select(train_rows);
  Dataset val = data.select(val_rows);
  auto mark = [&](Dataset& d, const char* part) {
    nlohmann::json prov = d.provenance();
    prov["split"] = {{"fraction", fraction}, {"seed", seed}, {"part", part}};
    d.set_provenance(std::move(prov));
  };
  mark(train, "train");
  mark(val, "validation");
  return {std::move(train), std::move(val)};
}

}  // namespace ppl

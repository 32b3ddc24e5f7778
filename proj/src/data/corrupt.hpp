#pragma once

#include <cstdint>
#include <utility>

#include "core/dataset.hpp"
#include "genmodels/generation_model.hpp"

namespace ppl {

// Replaces each example's singleton candidate set with one drawn from the
// generation model, conditioned on the true label. True labels are retained
// (the evaluation copy); export can strip them. Per-example substreams are
// derived from (seed, index), so the result is reproducible bit-for-bit.
Dataset corrupt(const Dataset& labeled, const GenerationModel& model, std::uint64_t seed);

// Seeded disjoint partition: floor(n * fraction) examples go to the second
// part (validation), the rest stay in the first (train).
std::pair<Dataset, Dataset> split_validation(const Dataset& data, double fraction,
                                             std::uint64_t seed);

}  // namespace ppl

#include "data/idx.hpp"

#include <cstdint>
#include <fstream>
#include <vector>

namespace ppl {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

std::uint32_t be32(const std::vector<unsigned char>& b, std::size_t off, const std::string& path) {
  if (off + 4 > b.size()) fail(errc::truncated_file, path + ": header cut short");
  return (std::uint32_t(b[off]) << 24) | (std::uint32_t(b[off + 1]) << 16) |
         (std::uint32_t(b[off + 2]) << 8) | std::uint32_t(b[off + 3]);
}

}  // namespace

Dataset load_idx_dataset(const std::string& images_path, const std::string& labels_path) {
  const auto img = read_file(images_path);
  const auto lab = read_file(labels_path);

  if (be32(img, 0, images_path) != kImagesMagic)
    fail(errc::bad_magic, images_path + ": expected image magic 0x803");
  if (be32(lab, 0, labels_path) != kLabelsMagic)
    fail(errc::bad_magic, labels_path + ": expected label magic 0x801");

  const std::uint32_t n_images = be32(img, 4, images_path);
  const std::uint32_t rows = be32(img, 8, images_path);
  const std::uint32_t cols = be32(img, 12, images_path);
  const std::uint32_t n_labels = be32(lab, 4, labels_path);

  if (n_images != n_labels)
    fail(errc::count_mismatch, std::to_string(n_images) + " images vs " +
                                   std::to_string(n_labels) + " labels");

  const std::size_t dim = std::size_t(rows) * cols;
  if (img.size() != 16 + std::size_t(n_images) * dim)
    fail(errc::truncated_file, images_path + ": payload size mismatch");
  if (lab.size() != 8 + std::size_t(n_labels))
    fail(errc::truncated_file, labels_path + ": payload size mismatch");

  int max_label = 0;
  for (std::size_t i = 0; i < n_labels; ++i) max_label = std::max<int>(max_label, lab[8 + i]);
  const LabelSpace space(max_label + 1);

  Eigen::MatrixXd features(n_images, static_cast<Eigen::Index>(dim));
  std::vector<std::optional<int>> labels;
  std::vector<CandidateSet> candidates;
  labels.reserve(n_images);
  candidates.reserve(n_images);
  for (std::uint32_t i = 0; i < n_images; ++i) {
    const unsigned char* px = img.data() + 16 + std::size_t(i) * dim;
    for (std::size_t j = 0; j < dim; ++j)
      features(i, static_cast<Eigen::Index>(j)) = px[j] / 255.0;
    const int y = lab[8 + i] + 1;
    labels.emplace_back(y);
    candidates.push_back(CandidateSet::singleton(y, space));
  }

  Dataset d(space, std::move(features), std::move(labels), std::move(candidates));
  d.set_provenance({{"source", "idx"},
                    {"images", images_path},
                    {"labels", labels_path},
                    {"scaling", "byte/255"}});
  return d;
}

}  // namespace ppl

#include "data/dataset_io.hpp"

#include <filesystem>
#include <fstream>

#include "core/text.hpp"
#include "data/idx.hpp"

namespace ppl {

namespace {

bool idx_ref_eligible(const Dataset& d) {
  const auto& p = d.provenance();
  return p.value("source", "") == "idx" && p.contains("images") &&
         !p.value("reordered", false);
}

std::string resolve_relative(const std::string& ref, const std::string& anchor_file) {
  std::filesystem::path p(ref);
  if (p.is_absolute() || std::filesystem::exists(p)) return ref;
  return (std::filesystem::path(anchor_file).parent_path() / p).string();
}

}  // namespace

void save_partial_label_file(const Dataset& data, const std::string& path,
                             bool strip_true_labels, FeaturePayload mode) {
  if (mode == FeaturePayload::automatic)
    mode = idx_ref_eligible(data) ? FeaturePayload::idx_ref : FeaturePayload::inline_csv;
  if (mode == FeaturePayload::idx_ref && !idx_ref_eligible(data))
    fail(errc::invalid_argument,
         "reference payload requires an unreordered dataset loaded from IDX");

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot write " + path);

  nlohmann::json header;
  header["K"] = data.num_classes();
  header["d"] = data.dim();
  header["n"] = data.size();
  header["features"] =
      mode == FeaturePayload::idx_ref
          ? nlohmann::json{{"mode", "idx_ref"}, {"images", data.provenance().at("images")}}
          : nlohmann::json{{"mode", "inline"}};
  header["provenance"] = data.provenance();
  out << header.dump() << '\n';

  for (Eigen::Index i = 0; i < data.size(); ++i) {
    out << i << ',' << data.candidates(i).mask() << ',';
    if (!strip_true_labels && data.label(i)) out << *data.label(i);
    if (mode == FeaturePayload::inline_csv)
      for (Eigen::Index j = 0; j < data.dim(); ++j)
        out << ',' << format_double(data.features()(i, j));
    out << '\n';
  }
  if (!out) fail(errc::io_error, "write failed for " + path);
}

Dataset load_partial_label_file(const std::string& path) {
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

  const int k = header.at("K").get<int>();
  const auto dim = header.at("d").get<Eigen::Index>();
  const auto n = header.at("n").get<Eigen::Index>();
  const LabelSpace space(k);
  const std::string payload = header.at("features").value("mode", "inline");

  Eigen::MatrixXd features;
  if (payload == "idx_ref") {
    const std::string images =
        resolve_relative(header.at("features").at("images").get<std::string>(), path);
    const std::string prov_labels = header.at("provenance").value("labels", "");
    if (prov_labels.empty())
      fail(errc::parse_error, path + ": reference payload lacks the source label file");
    // Only the pixels are taken from the IDX source; labels and candidate
    // sets come from the records below.
    const Dataset source = load_idx_dataset(images, resolve_relative(prov_labels, path));
    if (source.size() != n || source.dim() != dim)
      fail(errc::count_mismatch, path + ": referenced IDX shape differs from header");
    features = source.features();
  } else {
    features.resize(n, dim);
  }

  std::vector<std::optional<int>> labels(static_cast<std::size_t>(n));
  std::vector<CandidateSet> candidates;
  candidates.reserve(static_cast<std::size_t>(n));

  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      fail(errc::truncated_file, path + ": expected " + std::to_string(n) + " records");
    const auto fields = split(line, ',');
    const std::size_t expected =
        3 + (payload == "inline" ? static_cast<std::size_t>(dim) : 0);
    if (fields.size() != expected)
      fail(errc::parse_error, path + ": record " + std::to_string(i) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(expected));
    if (parse_int(fields[0]) != i)
      fail(errc::parse_error, path + ": record index out of order at line " + std::to_string(i));
    candidates.push_back(CandidateSet::from_mask(parse_u64(fields[1]), space));
    if (!fields[2].empty())
      labels[static_cast<std::size_t>(i)] = static_cast<int>(parse_int(fields[2]));
    if (payload == "inline")
      for (Eigen::Index j = 0; j < dim; ++j)
        features(i, j) = parse_double(fields[3 + static_cast<std::size_t>(j)]);
  }

  Dataset d(space, std::move(features), std::move(labels), std::move(candidates));
  d.set_provenance(header.value("provenance", nlohmann::json::object()));
  return d;
}

void save_labeled_csv(const Dataset& data, const std::string& path) {
  if (!data.fully_labeled()) fail(errc::missing_labels, "labeled CSV export needs all labels");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot write " + path);
  out << data.num_classes() << ',' << data.dim() << ',' << data.size() << '\n';
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    out << *data.label(i);
    for (Eigen::Index j = 0; j < data.dim(); ++j)
      out << ',' << format_double(data.features()(i, j));
    out << '\n';
  }
  if (!out) fail(errc::io_error, "write failed for " + path);
}

Dataset load_labeled_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(errc::truncated_file, path + ": missing header");
  const auto head = split(line, ',');
  if (head.size() != 3) fail(errc::parse_error, path + ": header must be K,d,n");
  const LabelSpace space(static_cast<int>(parse_int(head[0])));
  const auto dim = static_cast<Eigen::Index>(parse_int(head[1]));
  const auto n = static_cast<Eigen::Index>(parse_int(head[2]));

  Eigen::MatrixXd features(n, dim);
  std::vector<std::optional<int>> labels;
  std::vector<CandidateSet> candidates;
  labels.reserve(static_cast<std::size_t>(n));
  candidates.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      fail(errc::truncated_file, path + ": expected " + std::to_string(n) + " rows");
    const auto fields = split(line, ',');
    if (fields.size() != static_cast<std::size_t>(dim) + 1)
      fail(errc::parse_error, path + ": row " + std::to_string(i) + " has wrong arity");
    const int y = static_cast<int>(parse_int(fields[0]));
    labels.emplace_back(y);
    candidates.push_back(CandidateSet::singleton(y, space));
    for (Eigen::Index j = 0; j < dim; ++j)
      features(i, j) = parse_double(fields[1 + static_cast<std::size_t>(j)]);
  }
  Dataset d(space, std::move(features), std::move(labels), std::move(candidates));
  d.set_provenance({{"source", "csv"}, {"path", path}});
  return d;
}

}  // namespace ppl

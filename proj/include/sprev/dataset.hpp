#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sprev/matrix.hpp"

namespace sprev {

using ClassId = std::uint32_t;

// Feature matrix (samples x dimensions) with one class id per sample. Class
// ids are dense indices into class_names.
struct LabeledDataset {
  Matrix features;
  std::vector<ClassId> labels;
  std::vector<std::string> class_names;
  // Column headers, carried so a dataset can be written back out.
  std::vector<std::string> feature_names;
  std::string label_name = "label";

  std::size_t num_samples() const noexcept { return features.rows(); }
  std::size_t num_features() const noexcept { return features.cols(); }
  std::size_t num_classes() const noexcept { return class_names.size(); }

  bool operator==(const LabeledDataset&) const = default;
};

// Throws Errc::InvalidDataset if the shape, label or finiteness invariants do
// not hold. `min_classes` is 2 for anything entering the embedding pipeline.
void validate(const LabeledDataset& ds, std::size_t min_classes = 1);

// Samples per class, indexed by class id.
std::vector<std::size_t> class_counts(const LabeledDataset& ds);

LabeledDataset load_csv(const std::filesystem::path& path, const std::string& label_column);

// Header is feature_names then label_name; numbers use the shortest
// round-trip representation, so load_csv(write_csv(ds)) == ds.
void write_csv(const LabeledDataset& ds, const std::filesystem::path& path);
std::string to_csv(const LabeledDataset& ds);

// IDX image/label pair (MNIST layout). Pixels become features unscaled.
LabeledDataset load_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path);

struct CullSpec {
  std::size_t num_classes = 3;
  double subsample_fraction = 1.0;
  std::uint64_t seed = 0;
};

// Seeded class selection followed by per-class subsampling of
// ceil(fraction * class_count) samples. Retained samples keep their original
// relative order; labels are re-indexed by first appearance.
LabeledDataset cull(const LabeledDataset& ds, const CullSpec& spec);

}  // namespace sprev

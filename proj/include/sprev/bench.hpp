#pragma once

// kNN cross-validation over 2-D embeddings, with a PCA baseline.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sprev/core.hpp"
#include "sprev/dataset.hpp"
#include "sprev/layout.hpp"
#include "sprev/matrix.hpp"

namespace sprev {

enum class EmbedMethod { Sprev, Pca2d };

// CLI names: "sprev", "pca".
std::string_view method_name(EmbedMethod method) noexcept;
std::optional<EmbedMethod> parse_method(std::string_view name) noexcept;

// Per class: seeded shuffle, then deal round-robin into folds. The deal
// position carries over between classes so fold sizes differ by at most one.
// Throws Errc::ClassSmallerThanFolds.
std::vector<std::size_t> stratified_folds(std::span<const ClassId> labels, std::size_t folds,
                                          std::uint64_t seed);

struct Neighbor {
  double distance;
  std::size_t id;
  ClassId label;
};

// The `count` nearest training points to `query`, ordered by (distance, id).
// `ids` are the stable keys used for tie-breaks; empty means row position.
std::vector<Neighbor> nearest_neighbors(const Matrix& points, std::span<const ClassId> labels,
                                        std::span<const std::size_t> ids, Point2 query,
                                        std::size_t count);

// Majority vote over the first k neighbors. Vote ties go to the smaller summed
// distance, then the lower class id.
ClassId vote(std::span<const Neighbor> neighbors, std::size_t k);

// Throws Errc::KTooLarge if k is 0 or exceeds the training set.
ClassId knn_predict(const Matrix& points, std::span<const ClassId> labels,
                    std::span<const std::size_t> ids, Point2 query, std::size_t k);

struct PcaOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 1000;
  std::uint64_t seed = 0;
};

// Top-two principal axes by block power iteration on the covariance
// matrix; each axis is signed so its largest-magnitude component is positive.
// Zero-variance input yields an all-zero projection and a warning.
Matrix pca2d(const Matrix& features, const PcaOptions& options = {});
// The two axes (rows) used by pca2d, for inspection.
Matrix pca_axes(const Matrix& features, const PcaOptions& options = {});

struct BenchSpec {
  std::vector<std::size_t> k_values{5};
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  std::vector<EmbedMethod> methods{EmbedMethod::Sprev};
  unsigned threads = 1;
};

// Throws Errc::InvalidArgument / Errc::KTooLarge when the spec cannot run on
// `num_samples` samples.
void validate(const BenchSpec& spec, std::size_t num_samples);

struct BenchEntry {
  EmbedMethod method = EmbedMethod::Sprev;
  std::size_t k = 0;
  std::vector<double> fold_accuracies;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // population standard deviation over folds
  double embed_seconds = 0.0;
};

struct BenchResult {
  std::vector<BenchEntry> entries;  // method-major, k in spec order
  std::vector<std::size_t> fold_of;

  const BenchEntry* find(EmbedMethod method, std::size_t k) const;
};

// Embeds the full dataset once per method, then scores kNN on every fold
// against the remaining folds.
BenchResult run_bench(const LabeledDataset& ds, const EmbedConfig& cfg, const BenchSpec& spec);

// "method,k,fold,accuracy"
std::string bench_folds_csv(const BenchResult& result);
// "method,k,mean,std,embed_seconds". Wall-clock values vary between runs, so
// they are only written when include_timing is set; otherwise the column is
// left empty.
std::string bench_summary_csv(const BenchResult& result, bool include_timing);

}  // namespace sprev

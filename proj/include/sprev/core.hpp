#pragma once

// Scaling, class centroids, hypersphere anchors, similarity matrix and the
// distance-to-weight kernels that feed the polygon layout.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sprev/dataset.hpp"
#include "sprev/matrix.hpp"
#include "sprev/metrics.hpp"

namespace sprev {

// Features mapped per column into [0, 1]. Constant columns map to 0.
struct ScaledDataset {
  Matrix features;
  std::vector<ClassId> labels;
  std::vector<std::string> class_names;
  // (min, max) of each source column.
  std::vector<std::pair<double, double>> ranges;
  std::vector<std::size_t> constant_columns;

  std::size_t num_classes() const noexcept { return class_names.size(); }
};

// The sphere circumscribing the unit hypercube [0,1]^n.
struct BoundingBall {
  std::vector<double> center;
  double radius = 0.0;

  static BoundingBall for_unit_cube(std::size_t dimensions);
};

// One point per class on the bounding sphere, in class-id order.
struct SurfaceAnchors {
  Matrix anchors;
  BoundingBall ball;
};

struct SimilarityMatrix {
  Matrix values;  // samples x classes, distances to each anchor
  MetricKind metric = MetricKind::Euclidean;
};

enum class WeightKernel { InverseDistance, SoftmaxNegDistance };

struct EmbedConfig {
  MetricKind metric = MetricKind::Euclidean;
  WeightKernel kernel = WeightKernel::InverseDistance;
  double epsilon = 1e-12;
  double temperature = 1.0;  // softmax only
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency; never changes results
};

// Throws Errc::InvalidConfig unless epsilon > 0 and, for softmax,
// temperature > 0.
void validate(const EmbedConfig& cfg);

// Per-column min-max scaling. Emits one warning listing constant columns.
ScaledDataset min_max_scale(const LabeledDataset& ds);

// Row c is the mean of the samples labelled c. Throws Errc::EmptyClass.
Matrix class_centroids(const ScaledDataset& ds);

// Casts a ray from the ball center through each centroid and returns its
// intersection with the sphere of radius sqrt(n)/2. Throws
// Errc::CentroidAtCenter when a centroid sits on the center.
SurfaceAnchors surface_anchors(const Matrix& centroids, std::size_t dimensions);

SimilarityMatrix similarity_matrix(const ScaledDataset& ds, const SurfaceAnchors& anchors,
                                   MetricKind metric, unsigned threads = 1);

// Converts each distance row to convex weights (non-negative, summing to 1).
// Smaller distance always gets the larger weight.
Matrix weight_rows(const SimilarityMatrix& sim, const EmbedConfig& cfg);

}  // namespace sprev

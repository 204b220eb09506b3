#include "sprev/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sprev/error.hpp"
#include "sprev/parallel.hpp"

namespace sprev {

namespace {

// Anything closer than this to the ball center has no usable direction.
constexpr double kMinDirectionNorm = 1e-12;

std::string column_list(const std::vector<std::size_t>& cols, std::size_t limit = 10) {
  std::string out;
  for (std::size_t i = 0; i < cols.size() && i < limit; ++i) {
    if (i) out += ", ";
    out += std::to_string(cols[i]);
  }
  if (cols.size() > limit) out += ", ...";
  return out;
}

}  // namespace

BoundingBall BoundingBall::for_unit_cube(std::size_t dimensions) {
  return {std::vector<double>(dimensions, 0.5), std::sqrt(double(dimensions)) / 2.0};
}

void validate(const EmbedConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) {
    throw Error(Errc::InvalidConfig, "epsilon must be a positive finite number");
  }
  if (cfg.kernel == WeightKernel::SoftmaxNegDistance &&
      (!(cfg.temperature > 0.0) || !std::isfinite(cfg.temperature))) {
    throw Error(Errc::InvalidConfig, "softmax temperature must be positive");
  }
}

ScaledDataset min_max_scale(const LabeledDataset& ds) {
  const std::size_t m = ds.num_samples();
  const std::size_t n = ds.num_features();
  if (m == 0 || n == 0) throw Error(Errc::InvalidDataset, "cannot scale an empty dataset");

  ScaledDataset out;
  out.labels = ds.labels;
  out.class_names = ds.class_names;
  out.ranges.assign(n, {std::numeric_limits<double>::infinity(),
                        -std::numeric_limits<double>::infinity()});
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = ds.features.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      out.ranges[j].first = std::min(out.ranges[j].first, row[j]);
      out.ranges[j].second = std::max(out.ranges[j].second, row[j]);
    }
  }

  std::vector<double> span(n);
  for (std::size_t j = 0; j < n; ++j) {
    span[j] = out.ranges[j].second - out.ranges[j].first;
    if (!(span[j] > 0.0)) out.constant_columns.push_back(j);
  }

  out.features = Matrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto src = ds.features.row(i);
    auto dst = out.features.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      dst[j] = span[j] > 0.0 ? (src[j] - out.ranges[j].first) / span[j] : 0.0;
    }
  }

  if (!out.constant_columns.empty()) {
    warn(std::to_string(out.constant_columns.size()) +
         " constant feature column(s) scaled to 0: " + column_list(out.constant_columns));
  }
  return out;
}

Matrix class_centroids(const ScaledDataset& ds) {
  const std::size_t k = ds.num_classes();
  const std::size_t n = ds.features.cols();
  Matrix sums(k, n);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < ds.features.rows(); ++i) {
    const ClassId c = ds.labels[i];
    if (c >= k) throw Error(Errc::InvalidDataset, "label out of range");
    ++counts[c];
    const auto src = ds.features.row(i);
    auto dst = sums.row(c);
    for (std::size_t j = 0; j < n; ++j) dst[j] += src[j];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) {
      throw Error(Errc::EmptyClass, "class " + std::to_string(c) + " ('" + ds.class_names[c] +
                                        "') has no samples");
    }
    for (double& v : sums.row(c)) v /= double(counts[c]);
  }
  return sums;
}

SurfaceAnchors surface_anchors(const Matrix& centroids, std::size_t dimensions) {
  if (centroids.cols() != dimensions || dimensions == 0) {
    throw Error(Errc::DimensionMismatch, "centroid width " + std::to_string(centroids.cols()) +
                                             " does not match dimension " +
                                             std::to_string(dimensions));
  }
  SurfaceAnchors out{Matrix(centroids.rows(), dimensions),
                     BoundingBall::for_unit_cube(dimensions)};
  const auto& center = out.ball.center;
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const auto centroid = centroids.row(c);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < dimensions; ++j) {
      const double d = centroid[j] - center[j];
      norm2 += d * d;
    }
    const double norm = std::sqrt(norm2);
    if (!(norm > kMinDirectionNorm)) {
      throw Error(Errc::CentroidAtCenter,
                  "centroid of class " + std::to_string(c) +
                      " coincides with the bounding-ball center; its anchor direction is "
                      "undefined");
    }
    const double scale = out.ball.radius / norm;
    auto anchor = out.anchors.row(c);
    for (std::size_t j = 0; j < dimensions; ++j) {
      anchor[j] = center[j] + scale * (centroid[j] - center[j]);
    }
  }
  return out;
}

SimilarityMatrix similarity_matrix(const ScaledDataset& ds, const SurfaceAnchors& anchors,
                                   MetricKind metric, unsigned threads) {
  if (anchors.anchors.cols() != ds.features.cols()) {
    throw Error(Errc::DimensionMismatch, "anchor dimension " +
                                             std::to_string(anchors.anchors.cols()) +
                                             " differs from feature dimension " +
                                             std::to_string(ds.features.cols()));
  }
  const std::size_t m = ds.features.rows();
  const std::size_t k = anchors.anchors.rows();
  SimilarityMatrix sim{Matrix(m, k), metric};
  if (metric == MetricKind::CosineDistance) {
    // Surface the zero-vector error before spawning workers.
    for (std::size_t c = 0; c < k; ++c) {
      const auto a = anchors.anchors.row(c);
      if (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; })) {
        throw Error(Errc::ZeroVectorCosine, "anchor " + std::to_string(c) + " is the zero vector");
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      const auto x = ds.features.row(i);
      if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
        throw Error(Errc::ZeroVectorCosine,
                    "sample " + std::to_string(i) +
                        " scales to the zero vector; cosine distance is undefined");
      }
    }
  }
  parallel_rows(m, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto x = ds.features.row(i);
      auto out = sim.values.row(i);
      for (std::size_t c = 0; c < k; ++c) out[c] = dist(metric, x, anchors.anchors.row(c));
    }
  });
  return sim;
}

Matrix weight_rows(const SimilarityMatrix& sim, const EmbedConfig& cfg) {
  validate(cfg);
  const std::size_t m = sim.values.rows();
  const std::size_t k = sim.values.cols();
  for (double d : sim.values.data()) {
    if (!std::isfinite(d) || d < 0.0) {
      throw Error(Errc::InvalidArgument, "similarity entries must be finite and non-negative");
    }
  }
  Matrix w(m, k);
  parallel_rows(m, cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto d = sim.values.row(i);
      auto out = w.row(i);
      double total = 0.0;
      if (cfg.kernel == WeightKernel::InverseDistance) {
        for (std::size_t c = 0; c < k; ++c) {
          out[c] = 1.0 / (d[c] + cfg.epsilon);
          total += out[c];
        }
      } else {
        const double nearest = *std::min_element(d.begin(), d.end());
        for (std::size_t c = 0; c < k; ++c) {
          out[c] = std::exp(-(d[c] - nearest) / cfg.temperature);
          total += out[c];
        }
      }
      for (double& v : out) v /= total;
    }
  });
  return w;
}

}  // namespace sprev

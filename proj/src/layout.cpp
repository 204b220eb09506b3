#include "sprev/layout.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sprev/error.hpp"
#include "sprev/parallel.hpp"

namespace sprev {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

double cross(Point2 a, Point2 b, Point2 p) {
  return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
}

}  // namespace

std::vector<double> lin_space(double start, double stop, std::size_t num) {
  if (num < 2) {
    throw Error(Errc::NumTooSmall, "lin_space needs at least 2 samples, got " +
                                       std::to_string(num));
  }
  std::vector<double> out(num);
  const double step = (stop - start) / double(num - 1);
  for (std::size_t i = 0; i < num; ++i) out[i] = start + double(i) * step;
  out.back() = stop;
  return out;
}

Polygon make_polygon(std::size_t num_classes) {
  if (num_classes < 2) {
    throw Error(Errc::TooFewClasses, "a class polygon needs at least 2 vertices, got " +
                                         std::to_string(num_classes));
  }
  // One extra sample so the closing angle 2*pi can be dropped.
  const auto angles = lin_space(0.0, 2.0 * std::numbers::pi, num_classes + 1);
  Polygon poly{Matrix(num_classes, 2)};
  for (std::size_t c = 0; c < num_classes; ++c) {
    poly.vertices(c, 0) = std::cos(angles[c]);
    poly.vertices(c, 1) = std::sin(angles[c]);
  }
  return poly;
}

bool Polygon::contains(Point2 p, double tolerance) const {
  const std::size_t k = size();
  if (k == 2) {
    const Point2 a = vertex(0), b = vertex(1);
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    if (std::abs(cross(a, b, p)) / len > tolerance) return false;
    const double t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / (len * len);
    return t >= -tolerance && t <= 1.0 + tolerance;
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (cross(vertex(c), vertex((c + 1) % k), p) < -tolerance) return false;
  }
  return true;
}

double Polygon::interior_angle(std::size_t c) const {
  const std::size_t k = size();
  const Point2 here = vertex(c);
  const Point2 prev = vertex((c + k - 1) % k);
  const Point2 next = vertex((c + 1) % k);
  const double ax = prev[0] - here[0], ay = prev[1] - here[1];
  const double bx = next[0] - here[0], by = next[1] - here[1];
  return std::atan2(std::abs(ax * by - ay * bx), ax * bx + ay * by);
}

double Polygon::edge_length(std::size_t c) const {
  const Point2 a = vertex(c), b = vertex((c + 1) % size());
  return std::hypot(b[0] - a[0], b[1] - a[1]);
}

Matrix convex_combination(const Matrix& weights, const Polygon& polygon) {
  if (weights.cols() != polygon.size()) {
    throw Error(Errc::ShapeMismatch, "weight rows have " + std::to_string(weights.cols()) +
                                         " columns but the polygon has " +
                                         std::to_string(polygon.size()) + " vertices");
  }
  const std::size_t k = polygon.size();
  Matrix points(weights.rows(), 2);
  for (std::size_t i = 0; i < weights.rows(); ++i) {
    const auto w = weights.row(i);
    double total = 0.0;
    double x = 0.0, y = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (!(w[c] >= 0.0)) {
        throw Error(Errc::NonConvexRow, "weight row " + std::to_string(i) +
                                            " has a negative or NaN entry");
      }
      total += w[c];
      x += w[c] * polygon.vertices(c, 0);
      y += w[c] * polygon.vertices(c, 1);
    }
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
      throw Error(Errc::NonConvexRow, "weight row " + std::to_string(i) + " sums to " +
                                          std::to_string(total) + ", not 1");
    }
    points(i, 0) = x;
    points(i, 1) = y;
  }
  return points;
}

Embedding2D embed(const LabeledDataset& ds, const EmbedConfig& cfg) {
  validate(ds, 2);
  validate(cfg);
  const ScaledDataset scaled = min_max_scale(ds);
  const Matrix centroids = class_centroids(scaled);
  const SurfaceAnchors anchors = surface_anchors(centroids, ds.num_features());
  const SimilarityMatrix sim = similarity_matrix(scaled, anchors, cfg.metric, cfg.threads);
  const Matrix weights = weight_rows(sim, cfg);
  Polygon polygon = make_polygon(ds.num_classes());
  Matrix points = convex_combination(weights, polygon);
  return {std::move(points), std::move(polygon), ds.labels, ds.class_names};
}

}  // namespace sprev

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sprev/core.hpp"
#include "sprev/dataset.hpp"
#include "sprev/matrix.hpp"

namespace sprev {

using Point2 = std::array<double, 2>;

// `num` evenly spaced values from start to stop inclusive. Throws
// Errc::NumTooSmall for num < 2.
std::vector<double> lin_space(double start, double stop, std::size_t num);

// Regular polygon inscribed in the unit circle, vertex c at angle 2*pi*c/k,
// counterclockwise from (1, 0). With two vertices it degenerates to the
// segment between (1, 0) and (-1, 0).
struct Polygon {
  Matrix vertices;  // k x 2

  std::size_t size() const noexcept { return vertices.rows(); }
  Point2 vertex(std::size_t c) const { return {vertices(c, 0), vertices(c, 1)}; }

  // Inside or on the boundary, allowing `tolerance` of slack.
  bool contains(Point2 p, double tolerance = 1e-9) const;
  // Interior angle at vertex c, from the actual vertex coordinates.
  double interior_angle(std::size_t c) const;
  double edge_length(std::size_t c) const;
};

Polygon make_polygon(std::size_t num_classes);

// points = weights * vertices. Every weight row must be non-negative and sum
// to 1 within 1e-12 (Errc::NonConvexRow otherwise).
Matrix convex_combination(const Matrix& weights, const Polygon& polygon);

struct Embedding2D {
  Matrix points;  // m x 2
  Polygon polygon;
  std::vector<ClassId> labels;
  std::vector<std::string> class_names;
};

// The whole pipeline: scale, centroids, anchors, similarity, weights and the
// convex combination into the class polygon.
Embedding2D embed(const LabeledDataset& ds, const EmbedConfig& cfg);

}  // namespace sprev

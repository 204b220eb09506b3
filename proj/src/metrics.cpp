#include "sprev/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sprev/error.hpp"

namespace sprev {

std::string_view metric_name(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::Manhattan: return "manhattan";
    case MetricKind::CosineDistance: return "cosine";
  }
  return "euclidean";
}

std::optional<MetricKind> parse_metric(std::string_view name) noexcept {
  if (name == "euclidean") return MetricKind::Euclidean;
  if (name == "manhattan") return MetricKind::Manhattan;
  if (name == "cosine") return MetricKind::CosineDistance;
  return std::nullopt;
}

double dist(MetricKind kind, std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty()) {
    throw Error(Errc::DimensionMismatch, "distance between vectors of length " +
                                             std::to_string(u.size()) + " and " +
                                             std::to_string(v.size()));
  }
  const std::size_t n = u.size();
  switch (kind) {
    case MetricKind::Euclidean: {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = u[i] - v[i];
        sum += d * d;
      }
      return std::sqrt(sum);
    }
    case MetricKind::Manhattan: {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += std::abs(u[i] - v[i]);
      return sum;
    }
    case MetricKind::CosineDistance: {
      double dot = 0.0, uu = 0.0, vv = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dot += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
      }
      if (uu == 0.0 || vv == 0.0) {
        throw Error(Errc::ZeroVectorCosine, "cosine distance undefined for a zero vector");
      }
      // sqrt(uu * vv) keeps u-vs-u exactly 1.
      const double cos = dot / std::sqrt(uu * vv);
      return std::clamp(1.0 - cos, 0.0, 2.0);
    }
  }
  return 0.0;
}

}  // namespace sprev

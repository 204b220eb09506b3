#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace sprev {

enum class MetricKind { Euclidean, Manhattan, CosineDistance };

// Lowercase CLI names: "euclidean", "manhattan", "cosine".
std::string_view metric_name(MetricKind kind) noexcept;
std::optional<MetricKind> parse_metric(std::string_view name) noexcept;

// Distance between equal-length vectors. Cosine distance is
// 1 - <u,v> / (|u||v|) on the raw (uncentered) vectors, clamped to [0, 2].
double dist(MetricKind kind, std::span<const double> u, std::span<const double> v);

}  // namespace sprev

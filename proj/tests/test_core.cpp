#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "sprev/core.hpp"
#include "sprev/error.hpp"
#include "support.hpp"

using namespace sprev;

namespace {

LabeledDataset make(std::vector<std::vector<double>> rows, std::vector<ClassId> labels,
                    std::size_t classes) {
  LabeledDataset ds;
  ds.features = Matrix(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) ds.features(i, j) = rows[i][j];
  ds.labels = std::move(labels);
  for (std::size_t c = 0; c < classes; ++c) ds.class_names.push_back(std::to_string(c));
  return ds;
}

Matrix single(std::vector<double> row) {
  Matrix m(1, row.size());
  for (std::size_t j = 0; j < row.size(); ++j) m(0, j) = row[j];
  return m;
}

SimilarityMatrix sim_of(std::vector<double> row) {
  return {single(std::move(row)), MetricKind::Euclidean};
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected sprev::Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("min_max_scale examples") {
  auto s = min_max_scale(make({{0, 2}, {1, 4}}, {0, 1}, 2));
  CHECK(testing_support::to_rows(s.features) == std::vector<std::vector<double>>{{0, 0}, {1, 1}});

  s = min_max_scale(make({{0, 10}, {5, 20}, {10, 30}}, {0, 1, 0}, 2));
  CHECK(testing_support::to_rows(s.features) ==
        std::vector<std::vector<double>>{{0, 0}, {0.5, 0.5}, {1, 1}});
  CHECK(s.ranges[1] == std::pair<double, double>{10, 30});
}

TEST_CASE("constant columns map to zero with one warning") {
  std::vector<std::string> warnings;
  set_warning_handler([&](std::string_view msg) { warnings.emplace_back(msg); });
  const auto s = min_max_scale(make({{5, 1}, {5, 2}}, {0, 1}, 2));
  set_warning_handler(nullptr);
  CHECK(s.features(0, 0) == 0.0);
  CHECK(s.features(1, 0) == 0.0);
  CHECK(s.constant_columns == std::vector<std::size_t>{0});
  CHECK(warnings.size() == 1);
}

TEST_CASE("min_max_scale property: range [0,1] with extremes preserved") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ds = testing_support::random_dataset(30, 6, 3, seed);
    const auto s = min_max_scale(ds);
    for (std::size_t j = 0; j < ds.num_features(); ++j) {
      std::size_t lo = 0, hi = 0, slo = 0, shi = 0;
      for (std::size_t i = 0; i < ds.num_samples(); ++i) {
        CHECK(s.features(i, j) >= 0.0);
        CHECK(s.features(i, j) <= 1.0);
        if (ds.features(i, j) < ds.features(lo, j)) lo = i;
        if (ds.features(i, j) > ds.features(hi, j)) hi = i;
        if (s.features(i, j) < s.features(slo, j)) slo = i;
        if (s.features(i, j) > s.features(shi, j)) shi = i;
      }
      CHECK(lo == slo);
      CHECK(hi == shi);
      CHECK(s.features(lo, j) == 0.0);
      CHECK(s.features(hi, j) == 1.0);
    }
  }
}

TEST_CASE("class_centroids examples") {
  ScaledDataset s;
  s.features = Matrix(6, 2);
  const double rows[6][2] = {{0, 0}, {1, 1}, {0.2, 0.7}, {0, 0}, {0, 1}, {1, 0}};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 2; ++j) s.features(i, j) = rows[i][j];
  s.labels = {0, 0, 1, 2, 2, 2};
  s.class_names = {"a", "b", "c"};
  const auto c = class_centroids(s);
  CHECK(c(0, 0) == 0.5);
  CHECK(c(0, 1) == 0.5);
  CHECK(c(1, 0) == 0.2);
  CHECK(c(1, 1) == 0.7);
  // Hand sum: (0+0+1)/3 in each coordinate.
  CHECK(c(2, 0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(c(2, 1) == doctest::Approx(1.0 / 3).epsilon(1e-15));

  s.class_names.push_back("empty");
  CHECK(code_of([&] { class_centroids(s); }) == Errc::EmptyClass);
}

TEST_CASE("bounding ball circumscribes the unit cube") {
  for (std::size_t n : {1u, 2u, 3u, 4u, 100u, 784u}) {
    const auto b = BoundingBall::for_unit_cube(n);
    CHECK(b.center == std::vector<double>(n, 0.5));
    CHECK(std::abs(b.radius * b.radius - n / 4.0) <= 4 * std::numeric_limits<double>::epsilon() * n);
  }
}

TEST_CASE("surface_anchors examples") {
  auto a = surface_anchors(single({0.9, 0.5}), 2);
  CHECK(a.anchors(0, 0) == doctest::Approx(0.5 + std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK(a.anchors(0, 0) == doctest::Approx(1.20711).epsilon(1e-5));
  CHECK(a.anchors(0, 1) == 0.5);

  a = surface_anchors(single({1, 0.5, 0.5, 0.5}), 4);
  CHECK(a.anchors(0, 0) == doctest::Approx(1.5).epsilon(1e-15));
  for (int j = 1; j < 4; ++j) CHECK(a.anchors(0, j) == 0.5);

  CHECK(code_of([] { surface_anchors(single({0.5, 0.5}), 2); }) == Errc::CentroidAtCenter);
  CHECK(code_of([] { surface_anchors(single({0.5, 0.5}), 3); }) == Errc::DimensionMismatch);
}

TEST_CASE("surface_anchors property: on the sphere and collinear with the centroid") {
  Xoshiro256ss rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    Matrix c(4, n);
    for (double& v : c.data()) v = rng.uniform();
    const auto a = surface_anchors(c, n);
    for (std::size_t k = 0; k < 4; ++k) {
      double norm = 0, dot = 0, cn = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const double u = a.anchors(k, j) - 0.5, v = c(k, j) - 0.5;
        norm += u * u;
        dot += u * v;
        cn += v * v;
      }
      CHECK(std::abs(std::sqrt(norm) - std::sqrt(double(n)) / 2) < 1e-9);
      CHECK(dot / std::sqrt(norm * cn) > 1 - 1e-9);
    }
  }
}

TEST_CASE("similarity_matrix examples") {
  ScaledDataset s;
  s.features = single({0.5, 0.5});
  s.labels = {0};
  s.class_names = {"a"};
  const auto a = surface_anchors(single({0.9, 0.5}), 2);
  const auto sim = similarity_matrix(s, a, MetricKind::Euclidean);
  CHECK(sim.values(0, 0) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK(sim.values(0, 0) == doctest::Approx(0.70711).epsilon(1e-5));

  // A sample sitting on an anchor has distance 0.
  s.features = a.anchors;
  CHECK(similarity_matrix(s, a, MetricKind::Euclidean).values(0, 0) == 0.0);

  // One sample, three anchors: each entry is a plain dist call.
  Matrix c(3, 2);
  const double cents[3][2] = {{0.9, 0.5}, {0.1, 0.2}, {0.5, 0.95}};
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 2; ++j) c(k, j) = cents[k][j];
  const auto three = surface_anchors(c, 2);
  s.features = single({0.3, 0.8});
  for (auto kind : {MetricKind::Euclidean, MetricKind::Manhattan, MetricKind::CosineDistance}) {
    const auto m = similarity_matrix(s, three, kind);
    REQUIRE(m.values.rows() == 1);
    REQUIRE(m.values.cols() == 3);
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(m.values(0, k) == dist(kind, s.features.row(0), three.anchors.row(k)));
  }
}

TEST_CASE("similarity_matrix is thread-count independent") {
  const auto ds = testing_support::random_dataset(500, 20, 5, 8);
  const auto s = min_max_scale(ds);
  const auto a = surface_anchors(class_centroids(s), 20);
  const auto one = similarity_matrix(s, a, MetricKind::Manhattan, 1);
  CHECK(one.values == similarity_matrix(s, a, MetricKind::Manhattan, 4).values);
}

TEST_CASE("weight_rows examples") {
  EmbedConfig cfg;
  auto w = weight_rows(sim_of({1, 1, 1}), cfg);
  for (int c = 0; c < 3; ++c) CHECK(w(0, c) == doctest::Approx(1.0 / 3).epsilon(1e-15));

  // A vanishing epsilon stands in for zero, which the config rejects.
  cfg.epsilon = 1e-300;
  w = weight_rows(sim_of({1, 3}), cfg);
  CHECK(w(0, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(w(0, 1) == doctest::Approx(0.25).epsilon(1e-15));

  cfg.epsilon = 1e-12;
  w = weight_rows(sim_of({0, 5}), cfg);
  // 1e12 vs 1/5 normalised.
  CHECK(w(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w(0, 1) == doctest::Approx(0.2 / (1e12 + 0.2)).epsilon(1e-9));
  CHECK(w(0, 1) < 3e-13);
}

TEST_CASE("softmax kernel matches exp(-d/tau) normalised") {
  EmbedConfig cfg;
  cfg.kernel = WeightKernel::SoftmaxNegDistance;
  cfg.temperature = 0.5;
  const auto w = weight_rows(sim_of({1, 2, 4}), cfg);
  const double e[3] = {std::exp(-2.0), std::exp(-4.0), std::exp(-8.0)};
  const double total = e[0] + e[1] + e[2];
  for (int c = 0; c < 3; ++c) CHECK(w(0, c) == doctest::Approx(e[c] / total).epsilon(1e-14));
  // Huge distances must not underflow to 0/0.
  const auto far = weight_rows(sim_of({5000, 5001}), cfg);
  CHECK(far(0, 0) + far(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("weight rows property: convex and monotone in distance") {
  Xoshiro256ss rng(21);
  for (auto kernel : {WeightKernel::InverseDistance, WeightKernel::SoftmaxNegDistance}) {
    EmbedConfig cfg;
    cfg.kernel = kernel;
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t k = 2 + rng.below(7);
      std::vector<double> row(k);
      for (double& d : row) d = rng.below(4) == 0 ? 0.0 : 3 * rng.uniform();
      const auto w = weight_rows(sim_of(row), cfg);
      double sum = 0;
      for (std::size_t c = 0; c < k; ++c) {
        CHECK(w(0, c) >= 0.0);
        sum += w(0, c);
        for (std::size_t d = 0; d < k; ++d)
          if (row[c] < row[d]) CHECK(w(0, c) >= w(0, d));
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("embed config validation") {
  EmbedConfig cfg;
  cfg.epsilon = 0;
  CHECK(code_of([&] { validate(cfg); }) == Errc::InvalidConfig);
  cfg.epsilon = 1e-12;
  cfg.kernel = WeightKernel::SoftmaxNegDistance;
  cfg.temperature = 0;
  CHECK(code_of([&] { validate(cfg); }) == Errc::InvalidConfig);
  cfg.kernel = WeightKernel::InverseDistance;
  CHECK_NOTHROW(validate(cfg));
  CHECK(code_of([] { weight_rows(sim_of({1, -1}), EmbedConfig{}); }) == Errc::InvalidArgument);
}

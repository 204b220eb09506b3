#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles/naive_sprev.hpp"
#include "sprev/error.hpp"
#include "sprev/layout.hpp"
#include "support.hpp"

using namespace sprev;

namespace {

Matrix single(std::vector<double> row) {
  Matrix m(1, row.size());
  for (std::size_t j = 0; j < row.size(); ++j) m(0, j) = row[j];
  return m;
}

Point2 combine(std::vector<double> w, std::size_t k) {
  const auto p = convex_combination(single(std::move(w)), make_polygon(k));
  return {p(0, 0), p(0, 1)};
}

}  // namespace

TEST_CASE("lin_space examples") {
  CHECK(lin_space(0, 1, 3) == std::vector<double>{0, 0.5, 1});
  const double two_pi = 2 * std::numbers::pi;
  CHECK(lin_space(0, two_pi, 2) == std::vector<double>{0, two_pi});
  CHECK(lin_space(5, 5, 4) == std::vector<double>{5, 5, 5, 5});
  CHECK_THROWS_AS(lin_space(0, 1, 1), Error);
}

TEST_CASE("make_polygon examples") {
  const auto sq = make_polygon(4);
  const double expect4[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int c = 0; c < 4; ++c) {
    CHECK(sq.vertex(c)[0] == doctest::Approx(expect4[c][0]).epsilon(1e-15).scale(1));
    CHECK(sq.vertex(c)[1] == doctest::Approx(expect4[c][1]).epsilon(1e-15).scale(1));
  }
  const auto tri = make_polygon(3);
  const double h = std::sqrt(3.0) / 2;
  CHECK(tri.vertex(0) == Point2{1, 0});
  CHECK(tri.vertex(1)[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(tri.vertex(1)[1] == doctest::Approx(h).epsilon(1e-15));
  CHECK(tri.vertex(2)[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(tri.vertex(2)[1] == doctest::Approx(-h).epsilon(1e-15));

  const auto seg = make_polygon(2);
  CHECK(seg.vertex(0) == Point2{1, 0});
  CHECK(seg.vertex(1)[0] == -1.0);
  CHECK(std::abs(seg.vertex(1)[1]) < 1e-15);

  CHECK_THROWS_AS(make_polygon(1), Error);
}

TEST_CASE("polygon property: unit circumradius, equal sides and angles, distinct vertices") {
  for (std::size_t k = 2; k <= 40; ++k) {
    const auto p = make_polygon(k);
    REQUIRE(p.size() == k);
    for (std::size_t c = 0; c < k; ++c) {
      const auto v = p.vertex(c);
      CHECK(std::abs(std::hypot(v[0], v[1]) - 1.0) < 1e-12);
      CHECK(std::abs(p.edge_length(c) - p.edge_length(0)) < 1e-9);
      if (k >= 3) CHECK(std::abs(p.interior_angle(c) - p.interior_angle(0)) < 1e-9);
      for (std::size_t d = c + 1; d < k; ++d) {
        const auto u = p.vertex(d);
        CHECK(std::hypot(v[0] - u[0], v[1] - u[1]) > 1e-6);
      }
    }
    if (k >= 3) CHECK(p.interior_angle(0) == doctest::Approx(std::numbers::pi * (k - 2) / k));
  }
}

TEST_CASE("convex_combination examples") {
  for (std::size_t k = 2; k <= 9; ++k) {
    const auto p = combine(std::vector<double>(k, 1.0 / k), k);
    CHECK(std::abs(p[0]) < 1e-12);
    CHECK(std::abs(p[1]) < 1e-12);
    std::vector<double> one_hot(k, 0.0);
    one_hot[0] = 1.0;
    CHECK(combine(one_hot, k) == Point2{1, 0});
  }
  const auto mid = combine({0.5, 0.5, 0, 0}, 4);
  CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mid[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("convex_combination rejects non-convex rows and shape errors") {
  const auto tri = make_polygon(3);
  for (auto row : {std::vector<double>{0.5, 0.6, -0.1}, std::vector<double>{0.5, 0.5, 0.1},
                   std::vector<double>{NAN, 0.5, 0.5}}) {
    try {
      convex_combination(single(row), tri);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NonConvexRow);
    }
  }
  try {
    convex_combination(single({0.5, 0.5}), tri);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ShapeMismatch);
  }
}

TEST_CASE("containment property for random convex rows") {
  Xoshiro256ss rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 2 + rng.below(10);
    std::vector<double> w(k);
    double total = 0;
    for (double& v : w) total += (v = rng.below(3) == 0 ? 0.0 : -std::log1p(-rng.uniform()));
    if (total == 0) continue;
    for (double& v : w) v /= total;
    double s = 0;
    for (double v : w) s += v;
    w[0] += 1.0 - s;  // land the sum on 1 to the last bit
    if (w[0] < 0) continue;
    const auto poly = make_polygon(k);
    CHECK(poly.contains(combine(w, k)));
  }
  const auto sq = make_polygon(4);
  CHECK_FALSE(sq.contains({0.8, 0.8}));
  CHECK(sq.contains({0.5, 0.5}));
  const auto seg = make_polygon(2);
  CHECK(seg.contains({0.3, 0.0}));
  CHECK_FALSE(seg.contains({0.3, 0.1}));
  CHECK_FALSE(seg.contains({1.1, 0.0}));
}

TEST_CASE("embed: two classes on a line land on opposite sides") {
  LabeledDataset ds;
  ds.features = Matrix(2, 1);
  ds.features(1, 0) = 1.0;
  ds.labels = {0, 1};
  ds.class_names = {"a", "b"};
  const auto e = embed(ds, EmbedConfig{});
  // Scaled (0, 1); anchors at 0 and 1; weights 1/eps vs 1/(1+eps).
  const double inv_eps = 1e12, far = 1.0 / (1.0 + 1e-12);
  const double expect = (inv_eps - far) / (inv_eps + far);
  CHECK(e.points(0, 0) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(e.points(1, 0) == doctest::Approx(-expect).epsilon(1e-15));
  CHECK(std::abs(e.points(0, 1)) < 1e-12);
  CHECK(e.points(0, 0) > 0);
  CHECK(e.points(1, 0) < 0);
}

TEST_CASE("embed: samples equidistant from every anchor sit at the origin") {
  // Class centroids (0,0) and (1,1) give anchors on the diagonal; (1,0) and
  // (0,1) are equidistant from both.
  LabeledDataset ds;
  ds.features = Matrix(6, 2);
  const double rows[6][2] = {{0, 0}, {0, 0}, {1, 1}, {1, 1}, {1, 0}, {0, 1}};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 2; ++j) ds.features(i, j) = rows[i][j];
  ds.labels = {0, 0, 1, 1, 0, 0};
  ds.class_names = {"a", "b"};
  // Centroids (1/4,1/4) and (1,1) both lie on the diagonal.
  const auto e = embed(ds, EmbedConfig{});
  for (std::size_t i : {4u, 5u}) {
    CHECK(std::abs(e.points(i, 0)) < 1e-12);
    CHECK(std::abs(e.points(i, 1)) < 1e-12);
  }
}

TEST_CASE("embed matches the straight-loop reference") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Xoshiro256ss rng(seed);
    const std::size_t k = 2 + rng.below(6);
    const auto ds = testing_support::random_dataset(k + rng.below(60), 1 + rng.below(30), k, seed);
    const std::vector<int> y(ds.labels.begin(), ds.labels.end());
    for (bool softmax : {false, true}) {
      EmbedConfig cfg;
      if (softmax) cfg.kernel = WeightKernel::SoftmaxNegDistance;
      const auto e = embed(ds, cfg);
      const auto ref =
          oracle::naive_sprev(testing_support::to_rows(ds.features), y, int(k), softmax);
      for (std::size_t i = 0; i < ds.num_samples(); ++i) {
        CHECK(std::abs(e.points(i, 0) - ref[i][0]) < 1e-9);
        CHECK(std::abs(e.points(i, 1) - ref[i][1]) < 1e-9);
      }
    }
  }
}

// Centroid sums run in a different order, so allow rounding-level slack.
TEST_CASE("embed: permuting samples permutes rows") {
  const auto ds = testing_support::random_dataset(50, 5, 4, 17);
  auto shuffled = ds;
  std::vector<std::size_t> order(ds.num_samples());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Xoshiro256ss rng(2);
  partial_shuffle(std::span(order), order.size(), rng);
  for (std::size_t i = 0; i < order.size(); ++i) {
    shuffled.labels[i] = ds.labels[order[i]];
    for (std::size_t j = 0; j < ds.num_features(); ++j)
      shuffled.features(i, j) = ds.features(order[i], j);
  }
  const auto a = embed(ds, EmbedConfig{});
  const auto b = embed(shuffled, EmbedConfig{});
  for (std::size_t i = 0; i < order.size(); ++i) {
    CHECK(std::abs(b.points(i, 0) - a.points(order[i], 0)) < 1e-12);
    CHECK(std::abs(b.points(i, 1) - a.points(order[i], 1)) < 1e-12);
  }
}

TEST_CASE("embed: rotating class ids rotates the picture") {
  for (std::size_t k : {2u, 3u, 5u, 8u}) {
    const auto ds = testing_support::random_dataset(80, 6, k, 100 + k);
    const auto base = embed(ds, EmbedConfig{});
    for (std::size_t shift = 1; shift < k; ++shift) {
      auto rotated = ds;
      for (auto& label : rotated.labels) label = ClassId((label + shift) % k);
      const auto e = embed(rotated, EmbedConfig{});
      const double angle = 2 * std::numbers::pi * double(shift) / double(k);
      const double c = std::cos(angle), s = std::sin(angle);
      for (std::size_t i = 0; i < ds.num_samples(); ++i) {
        const double x = base.points(i, 0), y = base.points(i, 1);
        CHECK(std::abs(e.points(i, 0) - (c * x - s * y)) < 1e-9);
        CHECK(std::abs(e.points(i, 1) - (s * x + c * y)) < 1e-9);
      }
    }
  }
}

TEST_CASE("embed is deterministic and thread-count independent") {
  const auto ds = testing_support::random_dataset(700, 40, 6, 3);
  EmbedConfig one, many;
  many.threads = 4;
  const auto a = embed(ds, one);
  CHECK(a.points == embed(ds, one).points);
  CHECK(a.points == embed(ds, many).points);
  for (std::size_t i = 0; i < ds.num_samples(); ++i)
    CHECK(a.polygon.contains({a.points(i, 0), a.points(i, 1)}));
}

TEST_CASE("embed rejects single-class data") {
  auto ds = testing_support::random_dataset(5, 2, 1, 1);
  CHECK_THROWS_AS(embed(ds, EmbedConfig{}), Error);
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sprev/dataset.hpp"
#include "sprev/random.hpp"

namespace testing_support {

// Gaussian-ish clustered data: each class gets a random offset so centroids
// differ. The first num_classes samples cover every class once.
inline sprev::LabeledDataset random_dataset(std::size_t m, std::size_t n, std::size_t k,
                                            std::uint64_t seed) {
  sprev::Xoshiro256ss rng(seed);
  sprev::LabeledDataset ds;
  ds.features = sprev::Matrix(m, n);
  std::vector<std::vector<double>> offset(k, std::vector<double>(n));
  for (auto& row : offset)
    for (double& v : row) v = 4.0 * rng.uniform() - 2.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto c = static_cast<sprev::ClassId>(i < k ? i : rng.below(k));
    ds.labels.push_back(c);
    for (std::size_t j = 0; j < n; ++j) {
      double noise = 0.0;
      for (int t = 0; t < 4; ++t) noise += rng.uniform() - 0.5;
      ds.features(i, j) = offset[c][j] + 2.0 * noise;
    }
  }
  for (std::size_t c = 0; c < k; ++c) ds.class_names.push_back("c" + std::to_string(c));
  for (std::size_t j = 0; j < n; ++j) ds.feature_names.push_back("f" + std::to_string(j));
  return ds;
}

inline std::vector<std::vector<double>> to_rows(const sprev::Matrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

}  // namespace testing_support

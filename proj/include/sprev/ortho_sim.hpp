#pragma once

// Monte Carlo study of how close independent random unit vectors come to
// orthogonality as the dimension grows. Components are +-1/sqrt(n) with equal
// probability, so each vector has norm exactly 1.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sprev/random.hpp"

namespace sprev {

struct OrthoRunSpec {
  std::vector<std::size_t> dims;
  std::size_t num_pairs = 100'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct OrthoResult {
  std::size_t n = 0;
  double mean_abs_cos = 0.0;
  double max_abs_cos = 0.0;
  double frac_exceeding_eps = 0.0;  // share of pairs with |cos| >= ortho_epsilon(n)
  double std_abs_cos = 0.0;         // sample standard deviation of |cos|
  std::size_t num_pairs = 0;

  double standard_error() const;
};

// sqrt(5 / sqrt(n)), the deviation threshold in the concentration bound.
double ortho_epsilon(std::size_t n);
// 2 exp(-sqrt(n) / 2): upper bound on P(|cos| >= ortho_epsilon(n)).
double ortho_tail_bound(std::size_t n);

// Dimensions 1, 2, 4, ..., 8192.
std::vector<std::size_t> default_ortho_dims();

// Draws ceil(n/64) words from rng; bit j of word w sets the sign of
// component 64w + j (set bit = negative).
std::vector<double> random_unit_vector(std::size_t n, Xoshiro256ss& rng);

// Each dimension uses its own stream, stream_seed(seed, n), so a dimension's
// statistics do not depend on which other dimensions are requested or on the
// thread count.
std::vector<OrthoResult> run_ortho_sim(const OrthoRunSpec& spec);

// "n,mean_abs_cos,max_abs_cos,frac_exceeding_eps" plus one row per dimension.
std::string ortho_csv(const std::vector<OrthoResult>& results);

}  // namespace sprev

#include "sprev/ortho_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sprev/error.hpp"
#include "sprev/format.hpp"
#include "sprev/parallel.hpp"

namespace sprev {

namespace {

void fill_signs(std::vector<std::uint64_t>& words, std::size_t n, Xoshiro256ss& rng) {
  for (auto& w : words) w = rng.next();
  if (const std::size_t tail = n % 64; tail != 0) words.back() &= (~0ULL >> (64 - tail));
}

OrthoResult simulate_dimension(std::size_t n, std::size_t pairs, std::uint64_t seed) {
  Xoshiro256ss rng(stream_seed(seed, n));
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> u(words), v(words);
  const double eps = ortho_epsilon(n);

  OrthoResult r;
  r.n = n;
  r.num_pairs = pairs;
  double sum = 0.0, sum_sq = 0.0;
  std::size_t exceed = 0;
  for (std::size_t p = 0; p < pairs; ++p) {
    fill_signs(u, n, rng);
    fill_signs(v, n, rng);
    std::size_t disagree = 0;
    for (std::size_t w = 0; w < words; ++w) disagree += std::popcount(u[w] ^ v[w]);
    // <u,v> = (agreeing - disagreeing) / n for +-1/sqrt(n) components.
    const double cos = (double(n) - 2.0 * double(disagree)) / double(n);
    const double a = std::abs(cos);
    sum += a;
    sum_sq += a * a;
    r.max_abs_cos = std::max(r.max_abs_cos, a);
    if (a >= eps) ++exceed;
  }
  r.mean_abs_cos = sum / double(pairs);
  r.frac_exceeding_eps = double(exceed) / double(pairs);
  if (pairs > 1) {
    const double var = (sum_sq - double(pairs) * r.mean_abs_cos * r.mean_abs_cos) /
                       double(pairs - 1);
    r.std_abs_cos = std::sqrt(std::max(0.0, var));
  }
  return r;
}

}  // namespace

double OrthoResult::standard_error() const {
  return num_pairs > 0 ? std_abs_cos / std::sqrt(double(num_pairs)) : 0.0;
}

double ortho_epsilon(std::size_t n) { return std::sqrt(5.0 / std::sqrt(double(n))); }

double ortho_tail_bound(std::size_t n) { return 2.0 * std::exp(-std::sqrt(double(n)) / 2.0); }

std::vector<std::size_t> default_ortho_dims() {
  std::vector<std::size_t> dims;
  for (std::size_t n = 1; n <= 8192; n *= 2) dims.push_back(n);
  return dims;
}

std::vector<double> random_unit_vector(std::size_t n, Xoshiro256ss& rng) {
  if (n == 0) throw Error(Errc::InvalidArgument, "dimension must be at least 1");
  const double mag = 1.0 / std::sqrt(double(n));
  std::vector<double> v(n);
  for (std::size_t base = 0; base < n; base += 64) {
    const std::uint64_t word = rng.next();
    for (std::size_t j = 0; j < 64 && base + j < n; ++j) {
      v[base + j] = ((word >> j) & 1U) ? -mag : mag;
    }
  }
  return v;
}

std::vector<OrthoResult> run_ortho_sim(const OrthoRunSpec& spec) {
  if (spec.dims.empty()) throw Error(Errc::InvalidArgument, "no dimensions requested");
  if (spec.num_pairs == 0) throw Error(Errc::InvalidArgument, "num_pairs must be at least 1");
  for (std::size_t n : spec.dims) {
    if (n == 0) throw Error(Errc::InvalidArgument, "dimensions must be positive");
  }
  std::vector<OrthoResult> results(spec.dims.size());
  parallel_rows(
      spec.dims.size(), spec.threads,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          results[i] = simulate_dimension(spec.dims[i], spec.num_pairs, spec.seed);
        }
      },
      2);
  return results;
}

std::string ortho_csv(const std::vector<OrthoResult>& results) {
  std::string out = "n,mean_abs_cos,max_abs_cos,frac_exceeding_eps\n";
  for (const auto& r : results) {
    out += std::to_string(r.n);
    out += ',';
    out += format_sig6(r.mean_abs_cos);
    out += ',';
    out += format_sig6(r.max_abs_cos);
    out += ',';
    out += format_sig6(r.frac_exceeding_eps);
    out += '\n';
  }
  return out;
}

}  // namespace sprev

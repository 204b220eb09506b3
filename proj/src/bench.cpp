#include "sprev/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "sprev/error.hpp"
#include "sprev/format.hpp"
#include "sprev/parallel.hpp"
#include "sprev/random.hpp"

namespace sprev {

namespace {

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// y = C x for a symmetric n x n matrix.
void multiply(const Matrix& c, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const auto row = c.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void remove_component(std::span<double> v, std::span<const double> axis) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) d += v[i] * axis[i];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * axis[i];
}

void apply_sign_convention(std::span<double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    for (double& x : v) x = -x;
  }
}

// Orthonormalizes `vs` in place by modified Gram-Schmidt and drops vectors
// whose remaining norm is at or below `zero_level`.
void orthonormalize(std::vector<std::vector<double>>& vs, double zero_level) {
  std::vector<std::vector<double>> kept;
  for (auto& v : vs) {
    for (const auto& q : kept) remove_component(v, q);
    const double len = norm(v);
    if (len <= zero_level) continue;
    for (double& x : v) x /= len;
    kept.push_back(std::move(v));
  }
  vs = std::move(kept);
}

// Block power iteration on the top-`rank` invariant subspace of the PSD
// matrix `cov`, followed by a Rayleigh-Ritz rotation inside that subspace.
// Iterating both vectors together keeps them orthogonal (implicit deflation)
// and only needs a gap between the 2nd and 3rd eigenvalues, so a tie between
// the leading two does not stall it. Returns eigenvectors by descending
// eigenvalue; fewer than `rank` when the matrix is rank deficient.
std::vector<std::vector<double>> top_eigenvectors(const Matrix& cov, std::size_t rank,
                                                  double zero_level, const PcaOptions& opt) {
  const std::size_t n = cov.rows();
  Xoshiro256ss rng(opt.seed);
  std::vector<std::vector<double>> v(rank, std::vector<double>(n));
  for (auto& vec : v)
    for (double& x : vec) x = 2.0 * rng.uniform() - 1.0;
  orthonormalize(v, 0.0);

  std::vector<std::vector<double>> w;
  for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
    w.assign(v.size(), std::vector<double>(n));
    for (std::size_t a = 0; a < v.size(); ++a) multiply(cov, v[a], w[a]);

    // Projected matrix H = V^T C V and residual C V - V H.
    const std::size_t r = v.size();
    double h[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t i = 0; i < n; ++i) h[a][b] += v[a][i] * w[b][i];
    double residual = 0.0, scale = 0.0;
    for (std::size_t a = 0; a < r; ++a) {
      scale = std::max(scale, std::abs(h[a][a]));
      for (std::size_t i = 0; i < n; ++i) {
        double ri = w[a][i];
        for (std::size_t b = 0; b < r; ++b) ri -= v[b][i] * h[b][a];
        residual += ri * ri;
      }
    }

    if (scale <= zero_level || std::sqrt(residual) <= opt.tolerance * scale) {
      double lambda[2] = {h[0][0], h[1][1]};
      if (r == 2) {
        const double theta = 0.5 * std::atan2(2.0 * h[0][1], h[0][0] - h[1][1]);
        const double c = std::cos(theta), s = std::sin(theta);
        lambda[0] = c * c * h[0][0] + 2 * c * s * h[0][1] + s * s * h[1][1];
        lambda[1] = s * s * h[0][0] - 2 * c * s * h[0][1] + c * c * h[1][1];
        for (std::size_t i = 0; i < n; ++i) {
          const double x = v[0][i], y = v[1][i];
          v[0][i] = c * x + s * y;
          v[1][i] = -s * x + c * y;
        }
      }
      // Directions with a numerically zero eigenvalue carry no variance.
      while (!v.empty() && lambda[v.size() - 1] <= zero_level) v.pop_back();
      return v;
    }

    v = std::move(w);
    orthonormalize(v, zero_level);
    if (v.empty()) return v;
  }
  throw Error(Errc::ConvergenceFailure,
              "power iteration did not converge within " + std::to_string(opt.max_iterations) +
                  " iterations (second and third eigenvalues nearly equal)");
}

Matrix centered(const Matrix& x) {
  Matrix out = x;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) mean += x(i, j);
    mean /= double(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, j) -= mean;
  }
  return out;
}

Matrix covariance(const Matrix& xc) {
  const std::size_t n = xc.cols();
  Matrix cov(n, n);
  for (std::size_t r = 0; r < xc.rows(); ++r) {
    const auto row = xc.row(r);
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = row[i];
      if (xi == 0.0) continue;
      auto out = cov.row(i);
      for (std::size_t j = i; j < n; ++j) out[j] += xi * row[j];
    }
  }
  const double scale = 1.0 / double(xc.rows() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cov(i, j) *= scale;
      cov(j, i) = cov(i, j);
    }
  }
  return cov;
}

}  // namespace

std::string_view method_name(EmbedMethod method) noexcept {
  return method == EmbedMethod::Sprev ? "sprev" : "pca";
}

std::optional<EmbedMethod> parse_method(std::string_view name) noexcept {
  if (name == "sprev") return EmbedMethod::Sprev;
  if (name == "pca") return EmbedMethod::Pca2d;
  return std::nullopt;
}

std::vector<std::size_t> stratified_folds(std::span<const ClassId> labels, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) throw Error(Errc::InvalidArgument, "need at least 2 folds");
  ClassId max_label = 0;
  for (ClassId c : labels) max_label = std::max(max_label, c);
  std::vector<std::vector<std::size_t>> members(labels.empty() ? 0 : max_label + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

  for (std::size_t c = 0; c < members.size(); ++c) {
    if (!members[c].empty() && members[c].size() < folds) {
      throw Error(Errc::ClassSmallerThanFolds,
                  "class " + std::to_string(c) + " has " + std::to_string(members[c].size()) +
                      " samples, fewer than " + std::to_string(folds) + " folds");
    }
  }

  Xoshiro256ss rng(seed);
  std::vector<std::size_t> fold_of(labels.size(), 0);
  std::size_t deal = 0;
  for (auto& idx : members) {
    partial_shuffle(std::span(idx), idx.size(), rng);
    for (std::size_t i : idx) fold_of[i] = deal++ % folds;
  }
  return fold_of;
}

std::vector<Neighbor> nearest_neighbors(const Matrix& points, std::span<const ClassId> labels,
                                        std::span<const std::size_t> ids, Point2 query,
                                        std::size_t count) {
  const std::size_t m = points.rows();
  if (labels.size() != m || (!ids.empty() && ids.size() != m) || points.cols() != 2) {
    throw Error(Errc::ShapeMismatch, "training points, labels and ids disagree in size");
  }
  std::vector<Neighbor> all(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = points(i, 0) - query[0];
    const double dy = points(i, 1) - query[1];
    all[i] = {std::sqrt(dx * dx + dy * dy), ids.empty() ? i : ids[i], labels[i]};
  }
  count = std::min(count, m);
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count), all.end(),
                    neighbor_less);
  all.resize(count);
  return all;
}

ClassId vote(std::span<const Neighbor> neighbors, std::size_t k) {
  if (k == 0 || k > neighbors.size()) {
    throw Error(Errc::KTooLarge, "k=" + std::to_string(k) + " with only " +
                                     std::to_string(neighbors.size()) + " neighbors");
  }
  ClassId max_label = 0;
  for (std::size_t i = 0; i < k; ++i) max_label = std::max(max_label, neighbors[i].label);
  std::vector<std::size_t> votes(max_label + 1, 0);
  std::vector<double> dist_sum(max_label + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    ++votes[neighbors[i].label];
    dist_sum[neighbors[i].label] += neighbors[i].distance;
  }
  ClassId best = 0;
  for (ClassId c = 1; c <= max_label; ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && votes[c] > 0 &&
                                   dist_sum[c] < dist_sum[best])) {
      best = c;
    }
  }
  return best;
}

ClassId knn_predict(const Matrix& points, std::span<const ClassId> labels,
                    std::span<const std::size_t> ids, Point2 query, std::size_t k) {
  if (k == 0 || k > points.rows()) {
    throw Error(Errc::KTooLarge, "k=" + std::to_string(k) + " but only " +
                                     std::to_string(points.rows()) + " training points");
  }
  const auto neighbors = nearest_neighbors(points, labels, ids, query, k);
  return vote(neighbors, k);
}

Matrix pca_axes(const Matrix& features, const PcaOptions& options) {
  if (features.rows() < 2 || features.cols() == 0) {
    throw Error(Errc::InvalidArgument, "PCA needs at least 2 samples and 1 feature");
  }
  const Matrix cov = covariance(centered(features));
  double trace = 0.0;
  for (std::size_t i = 0; i < cov.rows(); ++i) trace += cov(i, i);
  const double zero_level = 1e-12 * trace;

  Matrix axes(2, features.cols());
  if (!(trace > 0.0)) {
    warn("PCA input has zero variance; returning an all-zero projection");
    return axes;
  }
  const std::size_t rank = std::min<std::size_t>(2, features.cols());
  auto vecs = top_eigenvectors(cov, rank, zero_level, options);
  if (vecs.size() < 2) {
    warn("PCA input has rank " + std::to_string(vecs.size()) + "; remaining axes are zero");
  }
  for (std::size_t a = 0; a < vecs.size(); ++a) {
    apply_sign_convention(vecs[a]);
    std::copy(vecs[a].begin(), vecs[a].end(), axes.row(a).begin());
  }
  return axes;
}

Matrix pca2d(const Matrix& features, const PcaOptions& options) {
  const Matrix axes = pca_axes(features, options);
  const Matrix xc = centered(features);
  Matrix out(features.rows(), 2);
  for (std::size_t i = 0; i < xc.rows(); ++i) {
    const auto row = xc.row(i);
    for (std::size_t a = 0; a < 2; ++a) {
      const auto axis = axes.row(a);
      double s = 0.0;
      for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * axis[j];
      out(i, a) = s;
    }
  }
  return out;
}

void validate(const BenchSpec& spec, std::size_t num_samples) {
  if (spec.folds < 2) throw Error(Errc::InvalidArgument, "folds must be at least 2");
  if (spec.k_values.empty()) throw Error(Errc::InvalidArgument, "no k values given");
  if (spec.methods.empty()) throw Error(Errc::InvalidArgument, "no methods given");
  const double train_size = double(spec.folds - 1) / double(spec.folds) * double(num_samples);
  for (std::size_t k : spec.k_values) {
    if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
    if (!(double(k) < train_size)) {
      throw Error(Errc::KTooLarge, "k=" + std::to_string(k) +
                                       " is not below the training-fold size " +
                                       format_sig6(train_size));
    }
  }
}

const BenchEntry* BenchResult::find(EmbedMethod method, std::size_t k) const {
  for (const auto& e : entries) {
    if (e.method == method && e.k == k) return &e;
  }
  return nullptr;
}

BenchResult run_bench(const LabeledDataset& ds, const EmbedConfig& cfg, const BenchSpec& spec) {
  validate(ds, 2);
  validate(spec, ds.num_samples());
  validate(cfg);

  BenchResult result;
  result.fold_of = stratified_folds(ds.labels, spec.folds, spec.seed);
  const std::size_t m = ds.num_samples();
  const std::size_t k_max = *std::max_element(spec.k_values.begin(), spec.k_values.end());

  std::vector<std::vector<std::size_t>> test_idx(spec.folds), train_idx(spec.folds);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t f = 0; f < spec.folds; ++f) {
      (result.fold_of[i] == f ? test_idx[f] : train_idx[f]).push_back(i);
    }
  }
  for (std::size_t f = 0; f < spec.folds; ++f) {
    if (train_idx[f].size() < k_max) {
      throw Error(Errc::KTooLarge, "k=" + std::to_string(k_max) + " exceeds the " +
                                       std::to_string(train_idx[f].size()) +
                                       " training samples of fold " + std::to_string(f));
    }
  }

  for (EmbedMethod method : spec.methods) {
    const auto start = std::chrono::steady_clock::now();
    const Matrix points = method == EmbedMethod::Sprev
                              ? embed(ds, cfg).points
                              : pca2d(ds.features, PcaOptions{.seed = spec.seed});
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    // correct[f][ki] = hits in fold f for k_values[ki]
    std::vector<std::vector<std::size_t>> correct(spec.folds,
                                                  std::vector<std::size_t>(spec.k_values.size()));
    parallel_rows(
        spec.folds, spec.threads,
        [&](std::size_t begin, std::size_t end) {
          for (std::size_t f = begin; f < end; ++f) {
            const auto& train = train_idx[f];
            Matrix train_points(train.size(), 2);
            std::vector<ClassId> train_labels(train.size());
            for (std::size_t r = 0; r < train.size(); ++r) {
              train_points(r, 0) = points(train[r], 0);
              train_points(r, 1) = points(train[r], 1);
              train_labels[r] = ds.labels[train[r]];
            }
            for (std::size_t q : test_idx[f]) {
              const auto neighbors = nearest_neighbors(train_points, train_labels, train,
                                                       {points(q, 0), points(q, 1)}, k_max);
              for (std::size_t ki = 0; ki < spec.k_values.size(); ++ki) {
                if (vote(neighbors, spec.k_values[ki]) == ds.labels[q]) ++correct[f][ki];
              }
            }
          }
        },
        2);

    for (std::size_t ki = 0; ki < spec.k_values.size(); ++ki) {
      BenchEntry entry;
      entry.method = method;
      entry.k = spec.k_values[ki];
      entry.embed_seconds = seconds;
      for (std::size_t f = 0; f < spec.folds; ++f) {
        entry.fold_accuracies.push_back(double(correct[f][ki]) / double(test_idx[f].size()));
      }
      const double n = double(spec.folds);
      entry.mean_accuracy =
          std::accumulate(entry.fold_accuracies.begin(), entry.fold_accuracies.end(), 0.0) / n;
      double var = 0.0;
      for (double a : entry.fold_accuracies) var += (a - entry.mean_accuracy) * (a - entry.mean_accuracy);
      entry.std_accuracy = std::sqrt(var / n);
      result.entries.push_back(std::move(entry));
    }
  }
  return result;
}

std::string bench_folds_csv(const BenchResult& result) {
  std::string out = "method,k,fold,accuracy\n";
  for (const auto& e : result.entries) {
    for (std::size_t f = 0; f < e.fold_accuracies.size(); ++f) {
      out += method_name(e.method);
      out += ',' + std::to_string(e.k) + ',' + std::to_string(f) + ',' +
             format_sig6(e.fold_accuracies[f]) + '\n';
    }
  }
  return out;
}

std::string bench_summary_csv(const BenchResult& result, bool include_timing) {
  std::string out = "method,k,mean,std,embed_seconds\n";
  for (const auto& e : result.entries) {
    out += method_name(e.method);
    out += ',' + std::to_string(e.k) + ',' + format_sig6(e.mean_accuracy) + ',' +
           format_sig6(e.std_accuracy) + ',';
    if (include_timing) out += format_sig6(e.embed_seconds);
    out += '\n';
  }
  return out;
}

}  // namespace sprev

#include "sprev/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sprev/bench.hpp"
#include "sprev/config.hpp"
#include "sprev/core.hpp"
#include "sprev/dataset.hpp"
#include "sprev/error.hpp"
#include "sprev/format.hpp"
#include "sprev/layout.hpp"
#include "sprev/ortho_sim.hpp"
#include "sprev/render.hpp"

namespace sprev {

namespace {

[[noreturn]] void usage_error(const std::string& message) {
  throw Error(Errc::InvalidArgument, message);
}

struct Options {
  std::string config;
  int threads = -1;

  // dataset input
  std::string input;
  std::string label_column;
  std::string idx_images;
  std::string idx_labels;

  // embedding
  std::string metric = "euclidean";
  std::string kernel = "inverse";
  double temperature = 1.0;
  double epsilon = 1e-12;
  std::uint64_t seed = 0;

  // embed
  std::string out_csv;
  std::string out_svg;
  int canvas_px = 1000;

  // cull
  std::size_t classes = 0;
  double fraction = 1.0;
  std::string out;

  // bench
  std::vector<std::size_t> k{5};
  std::size_t folds = 10;
  std::vector<std::string> methods{"sprev"};
  std::string out_folds;
  std::string out_summary;
  bool timings = false;

  // ortho
  std::vector<std::size_t> dims = default_ortho_dims();
  std::size_t pairs = 100'000;
};

struct Cli {
  Options opt;
  CLI::App app{"Class-anchored dimensionality reduction into a regular polygon", "sprev"};
  CLI::App* embed = nullptr;
  CLI::App* cull = nullptr;
  CLI::App* bench = nullptr;
  CLI::App* ortho = nullptr;

  Cli() {
    app.require_subcommand(1);
    embed = app.add_subcommand("embed", "Embed a labelled dataset and write CSV/SVG output");
    cull = app.add_subcommand("cull", "Write a seeded class/sample subset of a dataset");
    bench = app.add_subcommand("bench", "kNN cross-validation over 2-D embeddings");
    ortho = app.add_subcommand("ortho", "Near-orthogonality Monte Carlo simulation");

    for (CLI::App* sub : {embed, cull, bench, ortho}) {
      sub->add_option("--config", opt.config, "Flat key = value file of flag defaults");
      sub->add_option("--threads", opt.threads, "Worker threads (0 = all cores)")
          ->check(CLI::NonNegativeNumber);
      sub->add_option("--seed", opt.seed, "Seed for every random choice");
    }
    for (CLI::App* sub : {embed, cull, bench}) {
      sub->add_option("--input", opt.input, "CSV dataset with a header row");
      sub->add_option("--label-column", opt.label_column, "Name of the CSV label column");
      sub->add_option("--idx-images", opt.idx_images, "IDX image file (uncompressed)");
      sub->add_option("--idx-labels", opt.idx_labels, "IDX label file (uncompressed)");
    }
    for (CLI::App* sub : {embed, bench}) {
      sub->add_option("--metric", opt.metric, "euclidean | manhattan | cosine");
      sub->add_option("--kernel", opt.kernel, "inverse | softmax");
      sub->add_option("--temperature", opt.temperature, "Softmax temperature");
      sub->add_option("--epsilon", opt.epsilon, "Inverse-distance offset");
    }

    embed->add_option("--out-csv", opt.out_csv, "Write x,y,label rows");
    embed->add_option("--out-svg", opt.out_svg, "Write the polygon plot");
    embed->add_option("--canvas-px", opt.canvas_px, "SVG canvas size in pixels");

    cull->add_option("--classes", opt.classes, "Number of classes to keep (>= 2)");
    cull->add_option("--fraction", opt.fraction, "Per-class subsample fraction in (0, 1]");
    cull->add_option("--out", opt.out, "Output CSV path");

    bench->add_option("--k", opt.k, "Comma-separated k values")->delimiter(',');
    bench->add_option("--folds", opt.folds, "Stratified folds");
    bench->add_option("--methods", opt.methods, "Comma-separated: sprev, pca")->delimiter(',');
    bench->add_option("--out-folds", opt.out_folds, "Per-fold accuracy CSV");
    bench->add_option("--out-summary", opt.out_summary, "Summary CSV");
    bench->add_flag("--timings", opt.timings, "Include wall-clock seconds in the summary CSV");

    ortho->add_option("--dims", opt.dims, "Comma-separated dimensions")->delimiter(',');
    ortho->add_option("--pairs", opt.pairs, "Vector pairs per dimension");
    ortho->add_option("--out-csv", opt.out_csv, "Results CSV");
    ortho->add_option("--out-svg", opt.out_svg, "Mean |cos| chart");
  }

  CLI::App* selected() const { return app.get_subcommands().front(); }
};

std::vector<const char*> make_argv(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"sprev"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return argv;
}

// Config-file values become extra "--key=value" arguments for every option
// not already given on the command line.
std::vector<std::string> config_arguments(const Cli& first) {
  std::vector<std::string> extra;
  if (first.opt.config.empty()) return extra;
  const CLI::App* sub = first.selected();
  for (const auto& [key, value] : load_config(first.opt.config)) {
    const CLI::Option* option =
        key == "config" || key == "help" ? nullptr : sub->get_option_no_throw("--" + key);
    if (option == nullptr) {
      usage_error("unknown config key '" + key + "' for '" + sub->get_name() + "'");
    }
    if (option->count() == 0) extra.push_back("--" + key + "=" + value);
  }
  return extra;
}

unsigned thread_count(const Options& opt) {
  if (opt.threads >= 0) return static_cast<unsigned>(opt.threads);
  if (const char* env = std::getenv("SPREV_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) usage_error("SPREV_THREADS must be a non-negative integer");
    return static_cast<unsigned>(v);
  }
  return 0;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::FileOpen, "cannot write " + path);
  out << content;
  if (!out) throw Error(Errc::FileOpen, "failed writing " + path);
}

LabeledDataset load_input(const Options& opt) {
  const bool csv = !opt.input.empty();
  const bool idx = !opt.idx_images.empty() || !opt.idx_labels.empty();
  if (csv == idx) usage_error("give either --input or --idx-images with --idx-labels");
  if (csv) {
    if (opt.label_column.empty()) usage_error("--label-column is required with --input");
    return load_csv(opt.input, opt.label_column);
  }
  if (opt.idx_images.empty() || opt.idx_labels.empty()) {
    usage_error("--idx-images and --idx-labels must be given together");
  }
  return load_idx(opt.idx_images, opt.idx_labels);
}

EmbedConfig embed_config(const Options& opt) {
  EmbedConfig cfg;
  const auto metric = parse_metric(opt.metric);
  if (!metric) usage_error("unsupported metric '" + opt.metric + "'");
  cfg.metric = *metric;
  if (opt.kernel == "inverse") {
    cfg.kernel = WeightKernel::InverseDistance;
  } else if (opt.kernel == "softmax") {
    cfg.kernel = WeightKernel::SoftmaxNegDistance;
  } else {
    usage_error("unsupported kernel '" + opt.kernel + "'");
  }
  cfg.temperature = opt.temperature;
  cfg.epsilon = opt.epsilon;
  cfg.seed = opt.seed;
  cfg.threads = thread_count(opt);
  validate(cfg);
  return cfg;
}

std::string embedding_csv(const Embedding2D& emb) {
  std::string out = "x,y,label\n";
  for (std::size_t i = 0; i < emb.points.rows(); ++i) {
    out += format_sig6(emb.points(i, 0)) + ',' + format_sig6(emb.points(i, 1)) + ',' +
           csv_quote(emb.class_names.at(emb.labels[i])) + '\n';
  }
  return out;
}

int cmd_embed(const Options& opt, std::ostream&, std::ostream& err) {
  if (opt.out_csv.empty() && opt.out_svg.empty()) usage_error("give --out-csv and/or --out-svg");
  const EmbedConfig cfg = embed_config(opt);
  RenderStyle style;
  style.canvas_px = opt.canvas_px;
  validate(style);
  const LabeledDataset ds = load_input(opt);

  const auto start = std::chrono::steady_clock::now();
  const Embedding2D emb = embed(ds, cfg);
  const double embed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string svg;
  if (!opt.out_svg.empty()) svg = render_embedding(emb, style);
  const double total_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!opt.out_csv.empty()) write_text(opt.out_csv, embedding_csv(emb));
  if (!opt.out_svg.empty()) write_text(opt.out_svg, svg);
  err << "embed: " << format_sig(embed_s, 4) << " s, embed+render: " << format_sig(total_s, 4)
      << " s (" << ds.num_samples() << " samples x " << ds.num_features() << " features, "
      << ds.num_classes() << " classes)\n";
  return kExitOk;
}

int cmd_cull(const Options& opt, std::ostream&, std::ostream& err) {
  if (opt.classes == 0) usage_error("--classes is required");
  if (opt.out.empty()) usage_error("--out is required");
  const LabeledDataset ds = load_input(opt);
  const LabeledDataset culled =
      cull(ds, CullSpec{opt.classes, opt.fraction, opt.seed});
  write_text(opt.out, to_csv(culled));
  err << "cull: kept " << culled.num_samples() << " of " << ds.num_samples() << " samples in "
      << culled.num_classes() << " classes\n";
  return kExitOk;
}

int cmd_bench(const Options& opt, std::ostream& out, std::ostream& err) {
  BenchSpec spec;
  spec.k_values = opt.k;
  spec.folds = opt.folds;
  spec.seed = opt.seed;
  spec.methods.clear();
  for (const auto& name : opt.methods) {
    const auto method = parse_method(name);
    if (!method) usage_error("unsupported method '" + name + "'");
    spec.methods.push_back(*method);
  }
  const EmbedConfig cfg = embed_config(opt);
  spec.threads = cfg.threads;
  const LabeledDataset ds = load_input(opt);
  validate(spec, ds.num_samples());

  const BenchResult result = run_bench(ds, cfg, spec);
  if (!opt.out_folds.empty()) write_text(opt.out_folds, bench_folds_csv(result));
  if (!opt.out_summary.empty()) write_text(opt.out_summary, bench_summary_csv(result, opt.timings));
  out << bench_summary_csv(result, false);
  // Each method is embedded once and shared by all k.
  for (EmbedMethod m : spec.methods) {
    if (const auto* e = result.find(m, spec.k_values.front())) {
      err << method_name(m) << ": embed " << format_sig(e->embed_seconds, 4) << " s\n";
    }
  }
  return kExitOk;
}

int cmd_ortho(const Options& opt, std::ostream& out, std::ostream&) {
  OrthoRunSpec spec{opt.dims, opt.pairs, opt.seed, thread_count(opt)};
  const auto results = run_ortho_sim(spec);
  const std::string csv = ortho_csv(results);
  if (!opt.out_csv.empty()) {
    write_text(opt.out_csv, csv);
  } else {
    out << csv;
  }
  if (!opt.out_svg.empty()) {
    std::vector<std::pair<double, double>> series;
    for (const auto& r : results) series.emplace_back(double(r.n), r.mean_abs_cos);
    write_text(opt.out_svg,
               render_curve(series, {}, {"Mean |cos| between random unit vectors",
                                         "dimension N (log scale)", "mean |cos|"}));
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    auto first = std::make_unique<Cli>();
    auto argv = make_argv(args);
    try {
      first->app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) return first->app.exit(e, out, err);
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }

    std::vector<std::string> merged = args;
    const auto extra = config_arguments(*first);
    merged.insert(merged.end(), extra.begin(), extra.end());

    auto cli = std::make_unique<Cli>();
    auto merged_argv = make_argv(merged);
    try {
      cli->app.parse(static_cast<int>(merged_argv.size()), merged_argv.data());
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }

    const CLI::App* sub = cli->selected();
    if (sub == cli->embed) return cmd_embed(cli->opt, out, err);
    if (sub == cli->cull) return cmd_cull(cli->opt, out, err);
    if (sub == cli->bench) return cmd_bench(cli->opt, out, err);
    return cmd_ortho(cli->opt, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace sprev

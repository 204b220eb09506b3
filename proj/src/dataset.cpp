#include "sprev/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "sprev/error.hpp"
#include "sprev/format.hpp"
#include "sprev/random.hpp"

namespace sprev {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileOpen, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Comma split with RFC 4180 double-quote handling for text cells.
std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(ch);
    }
  }
  cells.push_back(std::move(cell));
  for (auto& c : cells) c = std::string(trim(c));
  return cells;
}

std::string cell_position(std::size_t line, std::size_t col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double parse_cell(std::string_view text, std::size_t line, std::size_t col) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ptr != s.data() + s.size() ||
      (ec != std::errc() && ec != std::errc::result_out_of_range)) {
    throw Error(Errc::NonNumericCell, "non-numeric cell '" + std::string(text) + "' at " +
                                          cell_position(line, col));
  }
  if (ec == std::errc::result_out_of_range) {
    // from_chars leaves `value` untouched here; strtod tells overflow (inf)
    // from underflow (a tiny finite value).
    value = std::strtod(std::string(s).c_str(), nullptr);
  }
  if (!std::isfinite(value)) {
    throw Error(Errc::NonFiniteValue, "non-finite value '" + std::string(text) + "' at " +
                                          cell_position(line, col));
  }
  return value;
}

// Re-index labels in order of first appearance.
void reindex_by_first_appearance(std::vector<ClassId>& labels,
                                 std::vector<std::string>& class_names) {
  std::vector<ClassId> remap(class_names.size(), ClassId(-1));
  std::vector<std::string> names;
  for (auto& label : labels) {
    if (remap[label] == ClassId(-1)) {
      remap[label] = static_cast<ClassId>(names.size());
      names.push_back(class_names[label]);
    }
    label = remap[label];
  }
  class_names = std::move(names);
}

std::uint32_t read_be32(const std::string& bytes, std::size_t offset) {
  return (std::uint32_t(std::uint8_t(bytes[offset])) << 24) |
         (std::uint32_t(std::uint8_t(bytes[offset + 1])) << 16) |
         (std::uint32_t(std::uint8_t(bytes[offset + 2])) << 8) |
         std::uint32_t(std::uint8_t(bytes[offset + 3]));
}

}  // namespace

void validate(const LabeledDataset& ds, std::size_t min_classes) {
  const auto fail = [](const std::string& msg) { throw Error(Errc::InvalidDataset, msg); };
  if (ds.num_samples() == 0) fail("dataset has no samples");
  if (ds.num_features() == 0) fail("dataset has no feature columns");
  if (ds.labels.size() != ds.num_samples()) fail("label count differs from sample count");
  if (ds.num_classes() < min_classes) {
    fail("dataset has " + std::to_string(ds.num_classes()) + " classes, need at least " +
         std::to_string(min_classes));
  }
  for (ClassId label : ds.labels) {
    if (label >= ds.num_classes()) fail("label " + std::to_string(label) + " out of range");
  }
  for (double v : ds.features.data()) {
    if (!std::isfinite(v)) fail("dataset contains a non-finite feature value");
  }
}

std::vector<std::size_t> class_counts(const LabeledDataset& ds) {
  std::vector<std::size_t> counts(ds.num_classes(), 0);
  for (ClassId label : ds.labels) ++counts.at(label);
  return counts;
}

LabeledDataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
  const std::string text = read_file(path);
  std::vector<std::string_view> lines;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      std::string_view line = rest.substr(0, nl);
      lines.push_back(line);
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  // Skip UTF-8 BOM.
  if (!lines.empty() && lines.front().starts_with("\xEF\xBB\xBF")) lines.front().remove_prefix(3);
  if (lines.empty() || trim(lines.front()).empty()) {
    throw Error(Errc::EmptyDataset, path.string() + ": missing header row");
  }

  const auto header = split_csv_line(lines.front());
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw Error(Errc::MissingLabelColumn,
                path.string() + ": no column named '" + label_column + "' in header");
  }
  const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());

  LabeledDataset ds;
  ds.label_name = label_column;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != label_idx) ds.feature_names.push_back(header[c]);
  }
  if (ds.feature_names.empty()) {
    throw Error(Errc::InvalidDataset, path.string() + ": no feature columns besides the label");
  }

  std::vector<double> values;
  std::unordered_map<std::string, ClassId> class_ids;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const auto cells = split_csv_line(lines[li]);
    if (cells.size() != header.size()) {
      throw Error(Errc::RaggedRow, path.string() + ": line " + std::to_string(li + 1) + " has " +
                                       std::to_string(cells.size()) + " cells, header has " +
                                       std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_idx) continue;
      values.push_back(parse_cell(cells[c], li + 1, c + 1));
    }
    const auto [it, inserted] =
        class_ids.emplace(cells[label_idx], static_cast<ClassId>(ds.class_names.size()));
    if (inserted) ds.class_names.push_back(cells[label_idx]);
    ds.labels.push_back(it->second);
  }
  if (ds.labels.empty()) throw Error(Errc::EmptyDataset, path.string() + ": no data rows");

  ds.features = Matrix(ds.labels.size(), ds.feature_names.size());
  std::copy(values.begin(), values.end(), ds.features.data().begin());
  return ds;
}

std::string to_csv(const LabeledDataset& ds) {
  std::string out;
  for (const auto& name : ds.feature_names) {
    out += csv_quote(name);
    out += ',';
  }
  out += csv_quote(ds.label_name);
  out += '\n';
  for (std::size_t i = 0; i < ds.num_samples(); ++i) {
    for (double v : ds.features.row(i)) {
      out += format_shortest(v);
      out += ',';
    }
    out += csv_quote(ds.class_names.at(ds.labels[i]));
    out += '\n';
  }
  return out;
}

void write_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
  if (ds.feature_names.size() != ds.num_features()) {
    throw Error(Errc::ShapeMismatch, "feature_names does not match the feature column count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::FileOpen, "cannot write " + path.string());
  out << to_csv(ds);
}

LabeledDataset load_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path) {
  const std::string images = read_file(images_path);
  const std::string labels = read_file(labels_path);

  if (images.size() < 4) throw Error(Errc::TruncatedFile, images_path.string() + ": no header");
  if (labels.size() < 4) throw Error(Errc::TruncatedFile, labels_path.string() + ": no header");
  if (read_be32(images, 0) != 0x00000803) {
    throw Error(Errc::BadMagic, images_path.string() + ": expected magic 0x00000803");
  }
  if (read_be32(labels, 0) != 0x00000801) {
    throw Error(Errc::BadMagic, labels_path.string() + ": expected magic 0x00000801");
  }
  if (images.size() < 16) throw Error(Errc::TruncatedFile, images_path.string() + ": short header");
  if (labels.size() < 8) throw Error(Errc::TruncatedFile, labels_path.string() + ": short header");

  const std::size_t count = read_be32(images, 4);
  const std::size_t rows = read_be32(images, 8);
  const std::size_t cols = read_be32(images, 12);
  const std::size_t label_count = read_be32(labels, 4);
  if (label_count != count) {
    throw Error(Errc::CountMismatch, "image count " + std::to_string(count) +
                                         " differs from label count " +
                                         std::to_string(label_count));
  }
  if (count == 0) throw Error(Errc::EmptyDataset, images_path.string() + ": zero images");
  const std::size_t pixels = rows * cols;
  if (pixels == 0) throw Error(Errc::InvalidDataset, images_path.string() + ": zero-size images");
  if (images.size() < 16 + count * pixels) {
    throw Error(Errc::TruncatedFile, images_path.string() + ": pixel data truncated");
  }
  if (labels.size() < 8 + count) {
    throw Error(Errc::TruncatedFile, labels_path.string() + ": label data truncated");
  }

  LabeledDataset ds;
  ds.features = Matrix(count, pixels);
  auto out = ds.features.data();
  for (std::size_t i = 0; i < count * pixels; ++i) {
    out[i] = static_cast<double>(static_cast<std::uint8_t>(images[16 + i]));
  }
  ds.feature_names.reserve(pixels);
  for (std::size_t p = 0; p < pixels; ++p) ds.feature_names.push_back("px" + std::to_string(p));

  std::vector<ClassId> byte_to_class(256, ClassId(-1));
  ds.labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto byte = static_cast<std::uint8_t>(labels[8 + i]);
    if (byte_to_class[byte] == ClassId(-1)) {
      byte_to_class[byte] = static_cast<ClassId>(ds.class_names.size());
      ds.class_names.push_back(std::to_string(byte));
    }
    ds.labels.push_back(byte_to_class[byte]);
  }
  return ds;
}

LabeledDataset cull(const LabeledDataset& ds, const CullSpec& spec) {
  validate(ds);
  if (spec.num_classes < 2) {
    throw Error(Errc::InvalidArgument, "cull needs at least 2 classes, got " +
                                           std::to_string(spec.num_classes));
  }
  if (!(spec.subsample_fraction > 0.0 && spec.subsample_fraction <= 1.0)) {
    throw Error(Errc::InvalidArgument, "subsample fraction must lie in (0, 1]");
  }
  if (spec.num_classes > ds.num_classes()) {
    throw Error(Errc::TooManyClassesRequested,
                "requested " + std::to_string(spec.num_classes) + " classes, dataset has " +
                    std::to_string(ds.num_classes()));
  }

  Xoshiro256ss rng(spec.seed);

  std::vector<ClassId> classes(ds.num_classes());
  std::iota(classes.begin(), classes.end(), ClassId{0});
  partial_shuffle(std::span(classes), spec.num_classes, rng);
  classes.resize(spec.num_classes);
  std::sort(classes.begin(), classes.end());

  std::vector<std::vector<std::size_t>> members(ds.num_classes());
  for (std::size_t i = 0; i < ds.num_samples(); ++i) members[ds.labels[i]].push_back(i);

  std::vector<std::size_t> keep;
  for (ClassId c : classes) {
    auto& idx = members[c];
    if (idx.empty()) {
      throw Error(Errc::EmptyAfterCull, "class '" + ds.class_names[c] + "' has no samples");
    }
    // The small offset keeps products like 0.12 * 500 from rounding up past
    // the intended integer.
    const double want = std::ceil(spec.subsample_fraction * double(idx.size()) - 1e-9);
    const auto take = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, idx.size());
    partial_shuffle(std::span(idx), take, rng);
    keep.insert(keep.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
  }
  std::sort(keep.begin(), keep.end());

  LabeledDataset out;
  out.feature_names = ds.feature_names;
  out.label_name = ds.label_name;
  out.class_names = ds.class_names;
  out.features = Matrix(keep.size(), ds.num_features());
  out.labels.reserve(keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto src = ds.features.row(keep[r]);
    std::copy(src.begin(), src.end(), out.features.row(r).begin());
    out.labels.push_back(ds.labels[keep[r]]);
  }
  reindex_by_first_appearance(out.labels, out.class_names);
  return out;
}

}  // namespace sprev

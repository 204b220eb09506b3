#include "sprev/render.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sprev/error.hpp"
#include "sprev/format.hpp"

namespace sprev {

namespace {

constexpr const char* kInk = "#333333";

bool is_hex_color(const std::string& s) {
  if (s.size() != 7 || s[0] != '#') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char ch) {
    return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f') || (ch >= 'A' && ch <= 'F');
  });
}

std::string num(double v) { return format_sig6(v); }

std::string svg_open(int width, int height) {
  const std::string w = std::to_string(width), h = std::to_string(height);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h +
         "\" fill=\"#ffffff\"/>\n";
}

std::string text_element(double x, double y, std::string_view anchor, double size,
                         std::string_view content) {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
         num(size) + "\" text-anchor=\"" + std::string(anchor) + "\" fill=\"" + kInk + "\">" +
         xml_escape(content) + "</text>\n";
}

std::string segment(double x0, double y0, double x1, double y1) {
  return "<polyline points=\"" + num(x0) + "," + num(y0) + " " + num(x1) + "," + num(y1) +
         "\" fill=\"none\" stroke=\"" + kInk + "\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::vector<std::string> RenderStyle::default_palette() {
  return {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
          "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
          "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5"};
}

const std::string& RenderStyle::color(std::size_t class_id) const {
  return palette[class_id % palette.size()];
}

void validate(const RenderStyle& style) {
  if (style.canvas_px <= 0) throw Error(Errc::InvalidArgument, "canvas size must be positive");
  if (!(style.point_radius_px > 0.0)) {
    throw Error(Errc::InvalidArgument, "point radius must be positive");
  }
  if (!(style.margin_fraction >= 0.0 && style.margin_fraction < 0.5)) {
    throw Error(Errc::InvalidArgument, "margin fraction must lie in [0, 0.5)");
  }
  if (style.palette.empty()) throw Error(Errc::InvalidArgument, "palette is empty");
  for (const auto& c : style.palette) {
    if (!is_hex_color(c)) throw Error(Errc::InvalidArgument, "bad palette color '" + c + "'");
  }
}

std::string render_embedding(const Embedding2D& emb, const RenderStyle& style) {
  validate(style);
  const double canvas = style.canvas_px;
  const double lo = -1.0 - style.margin_fraction;
  const double extent = 2.0 + 2.0 * style.margin_fraction;
  const auto px = [&](double x) { return (x - lo) / extent * canvas; };
  const auto py = [&](double y) { return (-lo - y) / extent * canvas; };

  std::string out = svg_open(style.canvas_px, style.canvas_px);

  const std::size_t k = emb.polygon.size();
  out += "<path d=\"";
  for (std::size_t c = 0; c < k; ++c) {
    out += c == 0 ? "M " : " L ";
    out += num(px(emb.polygon.vertices(c, 0))) + " " + num(py(emb.polygon.vertices(c, 1)));
  }
  out += " Z\" fill=\"none\" stroke=\"";
  out += kInk;
  out += "\" stroke-width=\"1.5\"/>\n";
  if (k == 2) {
    // A segment has no visible corners, so mark both ends.
    const double half = 2.0 * style.point_radius_px;
    for (std::size_t c = 0; c < 2; ++c) {
      out += "<rect x=\"" + num(px(emb.polygon.vertices(c, 0)) - half) + "\" y=\"" +
             num(py(emb.polygon.vertices(c, 1)) - half) + "\" width=\"" + num(2 * half) +
             "\" height=\"" + num(2 * half) + "\" fill=\"" + style.color(c) + "\"/>\n";
    }
  }

  const std::string radius = num(style.point_radius_px);
  for (std::size_t i = 0; i < emb.points.rows(); ++i) {
    out += "<circle cx=\"" + num(px(emb.points(i, 0))) + "\" cy=\"" + num(py(emb.points(i, 1))) +
           "\" r=\"" + radius + "\" fill=\"" + style.color(emb.labels.at(i)) + "\"/>\n";
  }

  const double font = std::max(10.0, canvas / 60.0);
  for (std::size_t c = 0; c < emb.class_names.size(); ++c) {
    const double y = font * (1.0 + 1.4 * double(c));
    out += "<rect x=\"" + num(font * 0.6) + "\" y=\"" + num(y) + "\" width=\"" + num(font * 0.8) +
           "\" height=\"" + num(font * 0.8) + "\" fill=\"" + style.color(c) + "\"/>\n";
    out += text_element(font * 1.8, y + font * 0.75, "start", font, emb.class_names[c]);
  }
  out += "</svg>\n";
  return out;
}

std::string render_curve(const std::vector<std::pair<double, double>>& series,
                         const RenderStyle& style, const CurveLabels& labels) {
  validate(style);
  if (series.size() < 2) throw Error(Errc::TooFewPoints, "a curve needs at least 2 points");
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series[i].first > 0.0)) {
      throw Error(Errc::NonPositiveX, "log-scaled x values must be positive");
    }
    if (!std::isfinite(series[i].second) || !std::isfinite(series[i].first)) {
      throw Error(Errc::InvalidArgument, "curve values must be finite");
    }
    if (i > 0 && !(series[i].first > series[i - 1].first)) {
      throw Error(Errc::NonMonotonicX, "x values must be strictly increasing");
    }
  }

  const double width = style.canvas_px;
  const double height = std::round(style.canvas_px * 0.6);
  const double left = 0.12 * width, right = 0.95 * width;
  const double top = 0.1 * height, bottom = 0.85 * height;

  const double lx0 = std::log10(series.front().first);
  const double lx1 = std::log10(series.back().first);
  double y0 = 0.0, y1 = 0.0;
  for (const auto& [x, y] : series) {
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (y1 - y0 <= 0.0) y1 = y0 + 1.0;
  y1 += 0.05 * (y1 - y0);

  const auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * (right - left); };
  const auto py = [&](double y) { return bottom - (y - y0) / (y1 - y0) * (bottom - top); };

  std::string out = svg_open(style.canvas_px, static_cast<int>(height));
  const double font = std::max(10.0, width / 70.0);

  out += "<polyline points=\"" + num(left) + "," + num(top) + " " + num(left) + "," +
         num(bottom) + " " + num(right) + "," + num(bottom) + "\" fill=\"none\" stroke=\"" +
         kInk + "\" stroke-width=\"1\"/>\n";

  std::vector<double> x_ticks;
  for (int e = static_cast<int>(std::ceil(lx0 - 1e-12)); e <= static_cast<int>(std::floor(lx1 + 1e-12)); ++e) {
    x_ticks.push_back(std::pow(10.0, e));
  }
  if (x_ticks.size() < 2) x_ticks = {series.front().first, series.back().first};
  for (double t : x_ticks) {
    const double x = px(t);
    out += segment(x, bottom, x, bottom + 6);
    out += text_element(x, bottom + 6 + font, "middle", font, format_sig(t, 6));
  }
  constexpr int kYTicks = 5;
  for (int i = 0; i <= kYTicks; ++i) {
    const double v = y0 + (y1 - y0) * i / kYTicks;
    const double y = py(v);
    out += segment(left - 6, y, left, y);
    out += text_element(left - 9, y + font * 0.35, "end", font, format_sig(v, 3));
  }

  out += "<polyline points=\"";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out += ' ';
    out += num(px(series[i].first)) + "," + num(py(series[i].second));
  }
  out += "\" fill=\"none\" stroke=\"" + style.color(0) + "\" stroke-width=\"2\"/>\n";
  for (const auto& [x, y] : series) {
    out += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"" +
           num(style.point_radius_px) + "\" fill=\"" + style.color(0) + "\"/>\n";
  }

  if (!labels.title.empty()) out += text_element(width / 2, top - font, "middle", font * 1.2, labels.title);
  if (!labels.x_label.empty()) {
    out += text_element((left + right) / 2, height - font * 0.6, "middle", font, labels.x_label);
  }
  if (!labels.y_label.empty()) out += text_element(left, top - font * 0.3, "middle", font, labels.y_label);
  out += "</svg>\n";
  return out;
}

}  // namespace sprev

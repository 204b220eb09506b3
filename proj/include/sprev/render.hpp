#pragma once

// Deterministic SVG output. Coordinates are printed with 6 significant digits
// and no locale, so identical input always yields identical bytes.

#include <string>
#include <utility>
#include <vector>

#include "sprev/layout.hpp"

namespace sprev {

struct RenderStyle {
  int canvas_px = 1000;
  double point_radius_px = 3.0;
  std::vector<std::string> palette = default_palette();
  double margin_fraction = 0.08;

  static std::vector<std::string> default_palette();
  // Class c is drawn with palette[c % palette.size()].
  const std::string& color(std::size_t class_id) const;
};

// Throws Errc::InvalidArgument for a non-positive canvas or radius, an empty
// palette, malformed colors or a margin outside [0, 0.5).
void validate(const RenderStyle& style);

// Polygon outline, one filled circle per sample, and a legend. The square
// [-1-margin, 1+margin]^2 fills the canvas with +y pointing up.
std::string render_embedding(const Embedding2D& emb, const RenderStyle& style = {});

struct CurveLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

// Line chart with a log10 x axis and linear y axis. Throws Errc::TooFewPoints,
// Errc::NonMonotonicX or Errc::NonPositiveX.
std::string render_curve(const std::vector<std::pair<double, double>>& series,
                         const RenderStyle& style = {}, const CurveLabels& labels = {});

}  // namespace sprev

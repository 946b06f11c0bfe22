#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csrbf/raster.hpp"
#include "csrbf/registration.hpp"

namespace csrbf {

struct GridSpec {
  Rect region;
  std::size_t lines = 11;     ///< grid lines per axis, >= 2
  std::size_t samples = 101;  ///< points per line, >= 2
};

/// Vector figure: deformed grid curves plus landmark markers. Sources are
/// drawn as circles, targets as stars.
struct FigureDoc {
  Rect view;
  std::vector<std::vector<Point2>> polylines;
  std::vector<Point2> sources;
  std::vector<Point2> targets;
  std::string title;

  /// SVG 1.1, 600x600 viewBox over `view` (y pointing up). Horizontal grid
  /// lines first, then vertical, then circles, then stars.
  std::string to_svg() const;
};

/// Maps every grid line through t. Throws InputError for an invalid spec.
FigureDoc deform_grid(const Transformation& t, const GridSpec& grid, const LandmarkCorrespondence& landmarks);

/// Backward warp: fits the reverse transformation (targets -> sources),
/// maps each output pixel centre (x = column, y = row) through it and
/// samples the input bilinearly. Samples outside [0, w-1] x [0, h-1] get
/// `fill`. Throws InputError when a landmark lies outside the image.
RasterImage warp_image(const Kernel& kernel, const LandmarkCorrespondence& landmarks, const RasterImage& img,
                       std::uint8_t fill = 0);

/// Transformation used by warp_image for the given inputs.
Transformation backward_transformation(const Kernel& kernel, const LandmarkCorrespondence& landmarks);

/// Bilinear sample of channel ch at (x, y); fill outside the pixel-centre hull.
double sample_bilinear(const RasterImage& img, double x, double y, std::size_t ch, double fill);

/// Deterministic grayscale head phantom (skull ring, tissue, ventricles,
/// folded cortex texture) used as the registration fixture.
RasterImage synthetic_brain_image(std::size_t width, std::size_t height);

/// Landmarks documented for the 128x128 phantom, in pixel coordinates.
LandmarkCorrespondence synthetic_brain_landmarks();

}  // namespace csrbf

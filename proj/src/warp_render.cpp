#include "csrbf/warp_render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "csrbf/errors.hpp"
#include "csrbf/io.hpp"
#include "csrbf/parallel.hpp"

namespace csrbf {
namespace {

constexpr double kViewSize = 600.0;

struct ViewMap {
  Rect view;
  double sx(double x) const { return (x - view.x0) / (view.x1 - view.x0) * kViewSize; }
  double sy(double y) const { return kViewSize - (y - view.y0) / (view.y1 - view.y0) * kViewSize; }
};

void check_grid(const GridSpec& g) {
  if (g.lines < 2 || g.samples < 2) throw InputError("grid needs at least 2 lines and 2 samples per line");
  if (g.region.x1 == g.region.x0 || g.region.y1 == g.region.y0) throw InputError("grid region has zero area");
}

}  // namespace

std::string FigureDoc::to_svg() const {
  const ViewMap map{view};
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
         "viewBox=\"0 0 600 600\">\n";
  if (!title.empty()) out << "<title>" << title << "</title>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
  out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
  for (const auto& line : polylines) {
    out << "<polyline points=\"";
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (k != 0) out << ' ';
      out << format_number(map.sx(line[k].x)) << ',' << format_number(map.sy(line[k].y));
    }
    out << "\"/>\n";
  }
  out << "</g>\n<g fill=\"none\" stroke=\"red\" stroke-width=\"1.5\">\n";
  for (const auto& p : sources) {
    out << "<circle cx=\"" << format_number(map.sx(p.x)) << "\" cy=\"" << format_number(map.sy(p.y))
        << "\" r=\"6\"/>\n";
  }
  out << "</g>\n<g fill=\"none\" stroke=\"green\" stroke-width=\"1.5\">\n";
  for (const auto& p : targets) {
    // six-armed asterisk of radius 7
    const double cx = map.sx(p.x);
    const double cy = map.sy(p.y);
    out << "<path d=\"";
    for (int arm = 0; arm < 3; ++arm) {
      const double a = std::numbers::pi * (0.5 + arm / 3.0);
      const double dx = 7.0 * std::cos(a);
      const double dy = 7.0 * std::sin(a);
      if (arm != 0) out << ' ';
      out << 'M' << format_number(cx - dx) << ',' << format_number(cy - dy) << " L"
          << format_number(cx + dx) << ',' << format_number(cy + dy);
    }
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

FigureDoc deform_grid(const Transformation& t, const GridSpec& grid, const LandmarkCorrespondence& landmarks) {
  check_grid(grid);
  const Rect& r = grid.region;
  FigureDoc doc;
  doc.view = r;
  const auto lerp = [](double a, double b, std::size_t k, std::size_t n) {
    return a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  };
  for (std::size_t j = 0; j < grid.lines; ++j) {
    const double y = lerp(r.y0, r.y1, j, grid.lines);
    auto& line = doc.polylines.emplace_back();
    for (std::size_t k = 0; k < grid.samples; ++k) line.push_back(t.evaluate({lerp(r.x0, r.x1, k, grid.samples), y}));
  }
  for (std::size_t i = 0; i < grid.lines; ++i) {
    const double x = lerp(r.x0, r.x1, i, grid.lines);
    auto& line = doc.polylines.emplace_back();
    for (std::size_t k = 0; k < grid.samples; ++k) line.push_back(t.evaluate({x, lerp(r.y0, r.y1, k, grid.samples)}));
  }
  doc.sources = landmarks.source();
  doc.targets = landmarks.target();
  return doc;
}

double sample_bilinear(const RasterImage& img, double x, double y, std::size_t ch, double fill) {
  const double xmax = static_cast<double>(img.width() - 1);
  const double ymax = static_cast<double>(img.height() - 1);
  if (!(x >= 0.0 && x <= xmax && y >= 0.0 && y <= ymax)) return fill;
  const double fx0 = std::floor(x);
  const double fy0 = std::floor(y);
  const double fx = x - fx0;
  const double fy = y - fy0;
  const auto x0 = static_cast<std::size_t>(fx0);
  const auto y0 = static_cast<std::size_t>(fy0);
  const std::size_t x1 = std::min(x0 + 1, img.width() - 1);
  const std::size_t y1 = std::min(y0 + 1, img.height() - 1);
  return (1.0 - fx) * (1.0 - fy) * img.at(x0, y0, ch) + fx * (1.0 - fy) * img.at(x1, y0, ch) +
         (1.0 - fx) * fy * img.at(x0, y1, ch) + fx * fy * img.at(x1, y1, ch);
}

Transformation backward_transformation(const Kernel& kernel, const LandmarkCorrespondence& landmarks) {
  return fit(kernel, landmarks.reversed());
}

RasterImage warp_image(const Kernel& kernel, const LandmarkCorrespondence& landmarks, const RasterImage& img,
                       std::uint8_t fill) {
  const double xmax = static_cast<double>(img.width() - 1);
  const double ymax = static_cast<double>(img.height() - 1);
  const auto inside = [&](Point2 p) { return p.x >= 0.0 && p.x <= xmax && p.y >= 0.0 && p.y <= ymax; };
  for (std::size_t i = 0; i < landmarks.size(); ++i) {
    if (!inside(landmarks.source()[i]) || !inside(landmarks.target()[i])) {
      throw InputError("landmark " + std::to_string(i) + " lies outside the image");
    }
  }

  const Transformation backward = backward_transformation(kernel, landmarks);
  RasterImage out(img.width(), img.height(), img.channels(), fill);
  parallel_rows(img.height(), [&](std::size_t row) {
    for (std::size_t col = 0; col < img.width(); ++col) {
      const Point2 p = backward.evaluate({static_cast<double>(col), static_cast<double>(row)});
      for (std::size_t ch = 0; ch < img.channels(); ++ch) {
        const double v = sample_bilinear(img, p.x, p.y, ch, fill);
        out.at(col, row, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  });
  return out;
}

RasterImage synthetic_brain_image(std::size_t width, std::size_t height) {
  RasterImage img(width, height, 1);
  const double cx = 0.5 * static_cast<double>(width - 1);
  const double cy = 0.5 * static_cast<double>(height - 1);
  const double hx = 0.5 * static_cast<double>(width);
  const double hy = 0.5 * static_cast<double>(height);
  for (std::size_t row = 0; row < height; ++row) {
    for (std::size_t col = 0; col < width; ++col) {
      const double u = (static_cast<double>(col) - cx) / hx;
      const double v = (static_cast<double>(row) - cy) / hy;
      const double rho = std::sqrt((u / 0.8) * (u / 0.8) + (v / 0.9) * (v / 0.9));
      double value = 12.0;
      if (rho <= 1.0) {
        value = 215.0;  // skull
      }
      if (rho <= 0.88) {
        value = 125.0;  // tissue
        if (rho > 0.55) {
          const double theta = std::atan2(v, u);
          value += 35.0 * std::sin(14.0 * theta + 9.0 * rho);  // cortical folds
        }
        const double lu = (u + 0.13) / 0.08;
        const double ru = (u - 0.13) / 0.08;
        const double vv = (v + 0.05) / 0.24;
        if (lu * lu + vv * vv <= 1.0 || ru * ru + vv * vv <= 1.0) value = 35.0;  // ventricles
        if (std::abs(u) < 0.02 && rho < 0.8 && std::abs(v) > 0.3) value = 80.0;  // midline
      }
      img.at(col, row) = static_cast<std::uint8_t>(std::lround(value));
    }
  }
  return img;
}

LandmarkCorrespondence synthetic_brain_landmarks() {
  return LandmarkCorrespondence(
      {{63.5, 11.0}, {63.5, 116.0}, {13.0, 63.5}, {114.0, 63.5}, {55.0, 60.0}, {72.0, 60.0}, {38.0, 94.0},
       {89.0, 94.0}},
      {{63.5, 8.5}, {64.5, 118.0}, {10.5, 64.5}, {116.0, 62.0}, {53.0, 58.0}, {74.0, 58.5}, {40.0, 96.5},
       {87.0, 96.5}});
}

}  // namespace csrbf

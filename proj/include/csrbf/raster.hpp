#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace csrbf {

/// 8-bit grayscale (1 channel) or RGB (3 channels), row-major, interleaved.
class RasterImage {
 public:
  RasterImage() = default;
  /// Throws InputError for zero dimensions or channels not in {1, 3}.
  RasterImage(std::size_t width, std::size_t height, std::size_t channels, std::uint8_t fill = 0);
  RasterImage(std::size_t width, std::size_t height, std::size_t channels, std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channels() const noexcept { return channels_; }

  std::uint8_t& at(std::size_t x, std::size_t y, std::size_t ch = 0) {
    return pixels_[(y * width_ + x) * channels_ + ch];
  }
  std::uint8_t at(std::size_t x, std::size_t y, std::size_t ch = 0) const {
    return pixels_[(y * width_ + x) * channels_ + ch];
  }

  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 1;
  std::vector<std::uint8_t> pixels_;
};

/// Binary P5 (gray) / P6 (RGB) with maxval 255. Header comments allowed.
/// Throws ParseError on malformed or unsupported input.
RasterImage read_pnm(std::istream& in);
RasterImage read_pnm(const std::filesystem::path& path);
/// Writes "P5|P6\n<w> <h>\n255\n" followed by the raw bytes.
void write_pnm(std::ostream& out, const RasterImage& img);
void write_pnm(const std::filesystem::path& path, const RasterImage& img);

}  // namespace csrbf

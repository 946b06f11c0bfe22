#include "csrbf/raster.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "csrbf/errors.hpp"

namespace csrbf {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  while (ch != EOF && !std::isspace(ch) && ch != '#') {
    tok.push_back(static_cast<char>(ch));
    ch = in.get();
  }
  if (tok.empty()) throw ParseError("truncated PNM header", 0);
  // ch is the single whitespace byte separating the header from the raster
  return tok;
}

std::size_t header_number(std::istream& in) {
  const std::string tok = header_token(in);
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad PNM header value '" + tok + "'", 0);
  }
  if (pos != tok.size()) throw ParseError("bad PNM header value '" + tok + "'", 0);
  return v;
}

}  // namespace

RasterImage::RasterImage(std::size_t width, std::size_t height, std::size_t channels, std::uint8_t fill)
    : RasterImage(width, height, channels, std::vector<std::uint8_t>(width * height * channels, fill)) {}

RasterImage::RasterImage(std::size_t width, std::size_t height, std::size_t channels,
                         std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) throw InputError("image dimensions must be positive");
  if (channels != 1 && channels != 3) throw InputError("image must have 1 or 3 channels");
  if (pixels_.size() != width * height * channels) throw InputError("pixel buffer size mismatch");
}

RasterImage read_pnm(std::istream& in) {
  const std::string magic = header_token(in);
  std::size_t channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw ParseError("unsupported PNM magic '" + magic + "' (expected P5 or P6)", 0);
  }
  const std::size_t w = header_number(in);
  const std::size_t h = header_number(in);
  const std::size_t maxval = header_number(in);
  if (w == 0 || h == 0) throw ParseError("PNM image has zero size", 0);
  if (maxval != 255) throw ParseError("only maxval 255 is supported", 0);

  std::vector<std::uint8_t> pixels(w * h * channels);
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != pixels.size()) throw ParseError("truncated PNM raster", 0);
  return RasterImage(w, h, channels, std::move(pixels));
}

RasterImage read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open image " + path.string());
  return read_pnm(in);
}

void write_pnm(std::ostream& out, const RasterImage& img) {
  out << (img.channels() == 1 ? "P5" : "P6") << '\n' << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.pixels().size()));
}

void write_pnm(const std::filesystem::path& path, const RasterImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write image " + path.string());
  write_pnm(out, img);
}

}  // namespace csrbf

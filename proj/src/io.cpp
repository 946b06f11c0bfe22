#include "csrbf/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "csrbf/errors.hpp"

namespace csrbf {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError("not a number: '" + std::string(field) + "'", line);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

LandmarkCorrespondence read_landmarks_csv(std::istream& in) {
  std::vector<Point2> src;
  std::vector<Point2> dst;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split(text, ',');
    if (!header_seen) {
      if (fields.size() != 4 || trim(fields[0]) != "sx" || trim(fields[1]) != "sy" ||
          trim(fields[2]) != "tx" || trim(fields[3]) != "ty") {
        throw ParseError("expected header 'sx,sy,tx,ty'", line);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields, found " + std::to_string(fields.size()), line);
    }
    src.push_back({parse_double(fields[0], line), parse_double(fields[1], line)});
    dst.push_back({parse_double(fields[2], line), parse_double(fields[3], line)});
  }
  if (!header_seen) throw ParseError("empty landmark file", line);
  if (src.empty()) throw ParseError("no landmark rows", line);
  return LandmarkCorrespondence(std::move(src), std::move(dst));
}

LandmarkCorrespondence read_landmarks_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!doc.is_array()) throw ParseError("landmark JSON must be an array", 0);

  const auto point = [](const nlohmann::json& v, std::size_t idx, const char* key) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ParseError("entry " + std::to_string(idx) + ": '" + key + "' must be [x, y]", 0);
    }
    return Point2{v[0].get<double>(), v[1].get<double>()};
  };

  std::vector<Point2> src;
  std::vector<Point2> dst;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    if (!e.is_object() || !e.contains("source") || !e.contains("target")) {
      throw ParseError("entry " + std::to_string(i) + " needs 'source' and 'target'", 0);
    }
    src.push_back(point(e["source"], i, "source"));
    dst.push_back(point(e["target"], i, "target"));
  }
  return LandmarkCorrespondence(std::move(src), std::move(dst));
}

LandmarkCorrespondence load_landmarks(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open landmark file " + path.string());
  if (path.extension() == ".json") return read_landmarks_json(in);
  return read_landmarks_csv(in);
}

void write_landmarks_csv(std::ostream& out, const LandmarkCorrespondence& lm) {
  out << "sx,sy,tx,ty\n";
  for (std::size_t i = 0; i < lm.size(); ++i) {
    out << format_number(lm.source()[i].x) << ',' << format_number(lm.source()[i].y) << ','
        << format_number(lm.target()[i].x) << ',' << format_number(lm.target()[i].y) << '\n';
  }
}

void write_landmarks_json(std::ostream& out, const LandmarkCorrespondence& lm) {
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t i = 0; i < lm.size(); ++i) {
    doc.push_back({{"source", {lm.source()[i].x, lm.source()[i].y}},
                   {"target", {lm.target()[i].x, lm.target()[i].y}}});
  }
  out << doc.dump(2) << '\n';
}

void write_det_field_csv(std::ostream& out, const JacobianField& field) {
  const Rect& r = field.region;
  out << "# region: " << format_number(r.x0) << ',' << format_number(r.y0) << ','
      << format_number(r.x1) << ',' << format_number(r.y1) << '\n';
  out << "# resolution: " << field.nx << ',' << field.ny << '\n';
  out << "# min_det: " << format_number(field.min_det) << '\n';
  for (std::size_t j = 0; j < field.ny; ++j) {
    for (std::size_t i = 0; i < field.nx; ++i) {
      if (i != 0) out << ',';
      out << format_number(field.at(i, j));
    }
    out << '\n';
  }
}

}  // namespace csrbf
